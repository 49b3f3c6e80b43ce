#pragma once

#include <cstddef>
#include <functional>

namespace drham {

// Worker count: DRHAM_THREADS if set (>= 1), else the hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, n); the first exception thrown is rethrown.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace drham

#pragma once

// Published densities of the shipped seeds, kept as text so computed results
// can be compared against an independent transcription.

#include <span>
#include <string_view>

namespace drham {

struct PrintedDensity {
    int alpha;
    int d;
    std::string_view text;  // parse_diffpoly syntax
};

// kdv (d <= 3), 3spin (d <= 2), 4spin (d <= 1); empty for other names.
std::span<const PrintedDensity> printed_densities(std::string_view seed);
// gbar_{1,1} densities of 3spin and 4spin.
std::string_view printed_g11(std::string_view seed);
// delta gbar_{3,0} / delta u^1 for 4spin
std::string_view printed_4spin_h3_minus1();

}  // namespace drham

#pragma once

#include <string>
#include <vector>

namespace drham {

struct CheckEntry {
    std::string idx;
    bool residual_zero = true;
    std::string residual;  // canonical text of a nonzero residual
};

struct Report {
    std::string check;
    std::vector<CheckEntry> pairs;
    bool applicable = true;
    std::string note;

    void add(std::string idx, bool zero, std::string residual = {});
    bool passed() const;
    size_t failures() const;
    // {"check":name,"pairs":[{"idx":...,"residual_zero":bool}]}
    std::string to_json(int indent = -1) const;
    std::string str() const;
};

}  // namespace drham

#pragma once

#include "drham/operators.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace drham {

struct UnknownSeed : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SeedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SeedParam {
    std::string name;
    int max_deg = 0;
};

// c[a][b][g] = c_{abg}, all indices 0-based here (alpha - 1).
using StructureConstants = std::vector<std::vector<std::vector<Coefficient>>>;

struct CftSeed {
    std::string name;
    int n = 1;
    RationalMatrix eta;
    LocalFunctional g11;
    StructureConstants c;  // empty when not declared
    std::vector<SeedParam> params;
    std::vector<int> grading;  // |u^alpha|, |eps| = 1; empty when not declared
    TruncationConfig trunc_default;
    std::optional<int> divisor_class;  // alpha of the class paired with q
    FunctionalFamily known;            // further Hamiltonians known in closed form

    RationalMatrix eta_inverse() const { return matrix_inverse(eta); }
    HamiltonianOperator poisson(TruncationConfig trunc = {}) const;
    bool has_structure_constants() const { return !c.empty(); }
    // c^mu_{ab} = eta^{mu nu} c_{ab nu}, 1-based
    Coefficient c_up(int mu, int a, int b) const;
};

std::vector<std::string> seed_names();

// Built-in seeds: kdv, hodge, 3spin, 4spin, cp1. Fields of `trunc` that are
// set override the defaults; cp1 with an explicit config needs q_max and u_deg_max.
CftSeed get_seed(std::string_view name, std::optional<TruncationConfig> trunc = {});

// {name, N, eta, g11, c?, params?, grading?, trunc?}; g11 is either parser text or
// {"functional": <diffpoly json>}, matrix entries are integers or "p/q" strings.
CftSeed seed_from_json(std::string_view text, std::optional<TruncationConfig> trunc = {});
std::string seed_to_json(const CftSeed& s, int indent = -1);

// Coefficient of eps^2 u^1_2 in delta gbar_{1,1} / delta u^1.
Rational normalization_check(const CftSeed& s);

}  // namespace drham

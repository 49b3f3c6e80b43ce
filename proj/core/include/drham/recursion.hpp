#pragma once

#include "drham/seed.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace drham {

struct RecursionError : std::runtime_error {
    RecursionError(int a, int dd, const std::string& why)
        : std::runtime_error("recursion failed at g[" + std::to_string(a) + "][" + std::to_string(dd) + "]: " + why),
          alpha(a),
          d(dd) {}
    int alpha;
    int d;
};

struct Hierarchy {
    CftSeed seed;
    TruncationConfig trunc;
    int d_max = -1;
    DensityFamily densities;       // (alpha, d) -> g_{alpha,d}
    FunctionalFamily hamiltonians;  // (alpha, d) -> gbar_{alpha,d}
    // (alpha, d) -> the primitive P with dx P equal to the recursion right-hand side
    // that produced g_{alpha,d}; re-checkable exactness certificates.
    DensityFamily primitives;

    int n() const { return seed.n; }
    const DiffPoly& g(int alpha, int d) const;
    const LocalFunctional& gbar(int alpha, int d) const;
    HamiltonianOperator poisson() const { return seed.poisson(trunc); }

    // one line per density: "g[a][d] = <canonical text>"
    std::string str() const;
    // {"seed","N","truncation","densities":{"g[a][d]":..},"hamiltonians":{..}}
    std::string to_json(int indent = -1) const;
};

// Reads a to_json export back: densities, hamiltonians, truncation, seed name
// and N (the rest of the seed is not part of the export).
Hierarchy hierarchy_from_json(std::string_view text);

// dx((D-1) g_{alpha,d+1}) = {g_{alpha,d}, gbar_{1,1}} solved for g_{alpha,d+1}.
DiffPoly dilaton_step(const DiffPoly& g_prev, const LocalFunctional& g11, const RationalMatrix& eta);

// g_{alpha,-1} = eta_{alpha mu} u^mu, then dilaton steps up to d_max.
Hierarchy build_hierarchy(const CftSeed& seed, int d_max, std::optional<TruncationConfig> trunc = {});

// dx dg_{alpha,d+1}/du^beta == {g_{alpha,d}, gbar_{beta,0}} for -1 <= d < d_max.
Report trr_check(const Hierarchy& h, int beta);
// dg_{alpha,d+1}/du^1 == g_{alpha,d}, and dg_{alpha,-1}/du^1 == eta_{alpha 1}.
Report string_check(const Hierarchy& h);
// Re-verifies dx P == right-hand side for every recorded step.
Report certificate_check(const Hierarchy& h);

struct CommutativityMatrix {
    std::vector<std::pair<int, int>> index;           // (alpha, p)
    std::vector<std::vector<LocalFunctional>> entries;  // {gbar_i, gbar_j}
    bool is_zero() const;
    Report report() const;
};
// All pairwise brackets of gbar_{alpha,p}, -1 <= p <= p_max.
CommutativityMatrix commutativity_matrix(const Hierarchy& h, int p_max);

// Part of g_{alpha,d+1} with positive q-degree, from
// q d/dq g_{alpha,d+1} = dx^{-1} {g_{alpha,d}, gbar_{gamma,0}} - c^mu_{alpha gamma} g_{mu,d}
// (class gamma paired with q to 1).
DiffPoly divisor_step(const Hierarchy& h, int gamma, int alpha, int d);
// d gbar_{alpha,d}/du^gamma == c^mu_{alpha gamma} gbar_{mu,d-1} + q d/dq gbar_{alpha,d}.
Report hamiltonian_divisor_check(const Hierarchy& h, int gamma);

// Helpers on q-dependence.
DiffPoly q_derivative_scaled(const DiffPoly& f);    // q d/dq
DiffPoly q_integrate_scaled(const DiffPoly& f);     // inverse of q d/dq on the q-positive part
DiffPoly q_zero_part(const DiffPoly& f);

std::string pair_label(int alpha, int d);

}  // namespace drham

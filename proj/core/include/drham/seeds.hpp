#pragma once

#include "drham/recursion.hpp"
#include "drham/series.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace drham {

struct InconsistentSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AnsatzConstraint {
    std::string source;  // "normalization", "primary ...", "exact g[a][d]"
    Coefficient poly;     // polynomial in the unknowns, required to vanish
};

struct AnsatzTerm {
    int eps;
    Monomial mono;
    int unknown;  // parameter id
};

// Candidate gbar_{1,1} for Witten's r-spin theory: one unknown per functional
// direction of degree 2r+2 under |u^{a+1}| = r - a, |eps| = 1.
struct AnsatzSystem {
    int r = 0;
    int n = 0;
    std::vector<AnsatzTerm> basis;
    std::vector<int> unknowns;
    DiffPoly candidate;
    std::vector<AnsatzConstraint> constraints;
};

AnsatzSystem rspin_ansatz(int r);

// Constraints with a recorded source: the normalization N/12, the genus-zero
// three- and four-point data of the theory, and exactness of the dilaton
// right-hand sides producing g_{alpha,d} for 1 <= d <= levels.
std::vector<AnsatzConstraint> normalization_constraints(const AnsatzSystem& sys);
std::vector<AnsatzConstraint> primary_constraints(const AnsatzSystem& sys);
std::vector<AnsatzConstraint> exactness_constraints(const AnsatzSystem& sys, const DiffPoly& candidate, int levels);

struct RspinSolution {
    bool solved = false;
    std::map<int, Rational> assignment;     // unknown id -> value
    std::vector<AnsatzConstraint> residual;  // unsolved (nonlinear) constraints when not solved
    std::vector<std::string> stages;
    std::optional<CftSeed> seed;
};

// Staged solving: normalization and genus-zero data first, then, level by
// level, every constraint that has become linear. Throws InconsistentSystem.
RspinSolution rspin_solve(AnsatzSystem sys, int r, int max_levels = 3);

// Coefficients of g11 on the ansatz basis substituted into the assembled constraints.
Report rspin_verify(int r, const LocalFunctional& g11, int levels = 2);

// gbar_p = -2^{p+2}/(2p+1)!! int chi_{2p+3} for p = 0..p_max, from
// eps/sqrt2 chi' - chi^2 = u - lambda.
std::vector<LocalFunctional> riccati_kdv(int p_max);

}  // namespace drham

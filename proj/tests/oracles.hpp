#pragma once

// Test-side helpers: random inputs and small independent reference computations.

#include "drham/diffpoly.hpp"
#include "drham/parse.hpp"

#include <random>

namespace oracle {

using drham::DiffPoly;
using drham::Rational;

inline DiffPoly P(const char* s, int n = 1, drham::TruncationConfig t = {}) {
    return drham::parse_diffpoly(s, n, t);
}

struct RandomPolys {
    std::mt19937 rng;
    explicit RandomPolys(unsigned seed) : rng(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    Rational rational() {
        int num = pick(-9, 9);
        if (num == 0) num = 1;
        return drham::frac(num, pick(1, 6));
    }

    // nonconstant polynomial with terms of u-degree 1..3, jets of order <= kmax
    DiffPoly poly(int nvars, int terms = 4, int kmax = 3, int epsmax = 2) {
        DiffPoly f(nvars);
        for (int t = 0; t < terms; ++t) {
            drham::Monomial m;
            int deg = pick(1, 3);
            for (int i = 0; i < deg; ++i) m = drham::mono_mul(m, {{pick(1, nvars), pick(0, kmax), 1}});
            f.add_term(pick(0, epsmax), m, drham::Coefficient(rational()));
        }
        return f;
    }
};

}  // namespace oracle

#pragma once

#include "drham/coefficient.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace drham {

constexpr int kUnbounded = 1 << 28;

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MiuraShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TruncationConfig {
    int eps_max = kUnbounded;
    std::optional<int> q_max;
    std::optional<int> u_deg_max;

    TruncationConfig tighter(const TruncationConfig& o) const;
    bool operator==(const TruncationConfig&) const = default;
    std::string str() const;
};

struct JetVar {
    int alpha = 1;
    int k = 0;
    auto operator<=>(const JetVar&) const = default;
};

struct Factor {
    int alpha = 1;
    int k = 0;
    int exp = 1;
    auto operator<=>(const Factor&) const = default;
};

// Sorted by (alpha, k); exponents positive.
using Monomial = std::vector<Factor>;

int u_degree(const Monomial& m);
int diff_degree(const Monomial& m);
// Eigenvalue of the Euler-type operator sum (k+1) u_k d/du_k.
int weight(const Monomial& m);
Monomial mono_mul(const Monomial& a, const Monomial& b);
int mono_exp(const Monomial& m, JetVar v);
// Sorted list of alphas with multiplicity.
std::vector<int> alpha_multiset(const Monomial& m);

struct TermKey {
    int eps = 0;
    int udeg = 0;
    Monomial mono;

    TermKey() = default;
    TermKey(int e, Monomial m) : eps(e), udeg(u_degree(m)), mono(std::move(m)) {}
    bool operator<(const TermKey& o) const {
        if (eps != o.eps) return eps < o.eps;
        if (udeg != o.udeg) return udeg < o.udeg;
        return mono < o.mono;
    }
    bool operator==(const TermKey& o) const { return eps == o.eps && mono == o.mono; }
};

// Element of the completed ring of differential polynomials: sum of
// coefficient * eps^e * monomial in jets u^alpha_k.
//
// When the u-degree is truncated, u_prec() records the highest u-degree
// through which the stored value is exact; operations that lower the
// u-degree (partial derivatives) lower it as well.
class DiffPoly {
public:
    using Terms = std::map<TermKey, Coefficient>;

    explicit DiffPoly(int nvars = 1, TruncationConfig trunc = {});

    static DiffPoly constant(int nvars, const Coefficient& c, TruncationConfig trunc = {});
    static DiffPoly jet(int nvars, int alpha, int k = 0, TruncationConfig trunc = {});
    static DiffPoly term(int nvars, int eps, Monomial m, const Coefficient& c, TruncationConfig trunc = {});

    int nvars() const { return nvars_; }
    const TruncationConfig& trunc() const { return trunc_; }
    bool truncated() const { return truncated_; }
    int u_prec() const;
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(int eps, const Monomial& m, const Coefficient& c);
    Coefficient coeff(int eps, const Monomial& m) const;
    Coefficient constant_term() const { return coeff(0, {}); }

    // Re-truncate under a (possibly tighter) config.
    DiffPoly with_trunc(const TruncationConfig& t) const;
    // Forget the truncation bounds and u-precision (the result is treated as exact).
    DiffPoly as_exact() const;
    DiffPoly times_eps(int n) const;
    DiffPoly eps_part(int e) const;
    DiffPoly param_part(int id, int n) const;
    DiffPoly without_constant() const;
    int min_udeg() const;
    int max_eps() const;
    // Every term has differential degree minus eps power equal to `degree`.
    bool is_homogeneous(int degree = 0) const;

    DiffPoly operator-() const;
    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const Coefficient& c);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(DiffPoly a, const Coefficient& c) { return a *= c; }
    friend DiffPoly operator*(const Coefficient& c, DiffPoly a) { return a *= c; }
    friend DiffPoly operator*(DiffPoly a, const Rational& r) { return a *= Coefficient(r); }
    friend DiffPoly operator*(const Rational& r, DiffPoly a) { return a *= Coefficient(r); }
    bool operator==(const DiffPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    DiffPoly map_coefficients(const std::function<Coefficient(const Coefficient&)>& f) const;

    std::string str() const;

    // internal: set precision bookkeeping after bulk construction
    void set_u_prec(int p);
    void mark_truncated() { truncated_ = true; }

private:
    void check_same(const DiffPoly& o) const;
    void merge_meta(const DiffPoly& o);
    void prune();

    int nvars_;
    TruncationConfig trunc_;
    int u_prec_ = kUnbounded;
    bool truncated_ = false;
    Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const DiffPoly& f);

DiffPoly pow(const DiffPoly& f, int n);

// Total x-derivative.
DiffPoly dx(const DiffPoly& f, int times = 1);
DiffPoly partial(const DiffPoly& f, JetVar v);
DiffPoly euler_D(const DiffPoly& f);
DiffPoly variational_derivative(const DiffPoly& f, int alpha);

// Replace u^alpha_k by dx^k(images[alpha-1]). With check_shape the images must be
// u^alpha + sum_{k>=1} eps^k f_k with f_k of differential degree k.
DiffPoly substitute(const DiffPoly& f, const std::vector<DiffPoly>& images, bool check_shape = true);
void check_miura_shape(const std::vector<DiffPoly>& images);

// sum_m f^m / m!, requires u_deg_max and no constant term.
DiffPoly exp_series(const DiffPoly& f);

}  // namespace drham

#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace drham {

using Rational = mpq_class;

inline Rational frac(long n, long d) {
    Rational r(n);
    r /= d;
    return r;
}

std::string to_string(const Rational& r);
Rational parse_rational(std::string_view s);

// Interned names of formal parameters (q, l, ansatz unknowns a1, a2, ...).
// Ids are process-wide and never reused.
int param_id(std::string_view name);
const std::string& param_name(int id);

// Sorted (id, exponent) pairs, exponents > 0.
using ParamMono = std::vector<std::pair<int, int>>;

int param_degree(const ParamMono& m, int id);

class Coefficient {
public:
    Coefficient() = default;
    Coefficient(long v) : Coefficient(Rational(v)) {}
    Coefficient(const Rational& r);

    static Coefficient param(std::string_view name, int exp = 1);
    static Coefficient param(int id, int exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Rational part with no parameters.
    Rational constant_term() const;
    // Throws if parameters are present.
    Rational to_rational() const;

    const std::vector<std::pair<ParamMono, Rational>>& terms() const { return terms_; }

    Coefficient operator-() const;
    Coefficient& operator+=(const Coefficient& o);
    Coefficient& operator-=(const Coefficient& o);
    Coefficient& operator*=(const Rational& r);
    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator*(Coefficient a, const Rational& r) { return a *= r; }
    friend Coefficient operator*(const Rational& r, Coefficient a) { return a *= r; }
    bool operator==(const Coefficient& o) const;
    bool operator!=(const Coefficient& o) const { return !(*this == o); }

    int degree_in(int id) const;
    int min_degree_in(int id) const;
    bool depends_on(int id) const;
    // Drops terms with degree in `id` above max; returns true if anything was dropped.
    bool truncate_param(int id, int max_deg);
    // Coefficient of id^n, as a coefficient in the remaining parameters.
    Coefficient coeff_of(int id, int n) const;
    // id * d/d(id): multiplies each term by its degree in id.
    Coefficient degree_scale(int id) const;
    // Replace a parameter by a coefficient value.
    Coefficient substitute(int id, const Coefficient& value) const;
    // Replace a parameter by a rational value.
    Coefficient substitute(int id, const Rational& value) const { return substitute(id, Coefficient(value)); }

    // For a coefficient affine in `unknowns`: constant part and coefficient per unknown.
    // Throws if some term is nonlinear in the unknowns.
    std::pair<Coefficient, std::map<int, Coefficient>> linear_split(const std::vector<int>& unknowns) const;

    std::string str() const;

private:
    void normalize();
    std::vector<std::pair<ParamMono, Rational>> terms_;
};

std::ostream& operator<<(std::ostream& os, const Coefficient& c);

}  // namespace drham

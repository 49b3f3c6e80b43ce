#pragma once

#include "drham/diffpoly.hpp"

#include <vector>

namespace drham {

// Bernoulli numbers with B_1 = -1/2.
Rational bernoulli(int n);
Rational harmonic(int n);
Rational factorial(int n);
Rational binomial(int n, int k);

// Truncated power series in z with rational coefficients c[0..order].
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(std::vector<Rational> c) : c_(std::move(c)) {}

    static PowerSeries one(int order);
    // exp(a z)
    static PowerSeries exp_linear(const Rational& a, int order);
    // (e^{z/2} - e^{-z/2}) / z
    static PowerSeries S(int order);
    // z / (e^z - 1)
    static PowerSeries bernoulli_plus(int order);
    // z / (1 - e^{-z})
    static PowerSeries bernoulli_minus(int order);
    // sum_g B_{2g} z^{2g} / (2g)!  ==  (z/2) coth(z/2)
    static PowerSeries bernoulli_even(int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    Rational operator[](int n) const { return n < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(n)] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }

    PowerSeries operator*(const PowerSeries& o) const;
    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries scaled(const Rational& r) const;
    // Multiplicative inverse, requires c[0] != 0.
    PowerSeries inverse() const;
    // Only even (or odd) powers.
    PowerSeries even() const;
    PowerSeries odd() const;

private:
    std::vector<Rational> c_;
};

// sum_m c_m eps^m dx^m f, truncated at the eps bound of f (or the series order).
DiffPoly apply_series(const PowerSeries& s, const DiffPoly& f);

}  // namespace drham

#include "drham/series.hpp"

#include <algorithm>
#include <mutex>

namespace drham {

Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Rational r(1);
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

Rational bernoulli(int n) {
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    if (n < 0) throw std::invalid_argument("bernoulli index must be nonnegative");
    std::lock_guard lock(mu);
    // sum_{k=0}^{m} C(m+1,k) B_k = 0
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        Rational s(0);
        for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * cache[static_cast<size_t>(k)];
        cache.push_back(-s / (m + 1));
    }
    return cache[static_cast<size_t>(n)];
}

Rational harmonic(int n) {
    Rational h(0);
    for (int i = 1; i <= n; ++i) h += frac(1, i);
    return h;
}

PowerSeries PowerSeries::one(int order) {
    std::vector<Rational> c(static_cast<size_t>(order + 1), Rational(0));
    c[0] = 1;
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::exp_linear(const Rational& a, int order) {
    std::vector<Rational> c;
    Rational p(1);
    for (int n = 0; n <= order; ++n) {
        c.push_back(p / factorial(n));
        p *= a;
    }
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::S(int order) {
    // sum_n z^{2n} / (2^{2n} (2n+1)!)
    std::vector<Rational> c(static_cast<size_t>(order + 1), Rational(0));
    for (int n = 0; 2 * n <= order; ++n) {
        Rational d = factorial(2 * n + 1);
        for (int i = 0; i < 2 * n; ++i) d *= 2;
        c[static_cast<size_t>(2 * n)] = 1 / d;
    }
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::bernoulli_plus(int order) {
    std::vector<Rational> c;
    for (int n = 0; n <= order; ++n) c.push_back(bernoulli(n) / factorial(n));
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::bernoulli_minus(int order) {
    std::vector<Rational> c;
    for (int n = 0; n <= order; ++n) c.push_back((n % 2 ? -1 : 1) * bernoulli(n) / factorial(n));
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::bernoulli_even(int order) {
    return bernoulli_plus(order).even();
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    int n = std::min(order(), o.order());
    if (n < 0) return {};
    std::vector<Rational> c(static_cast<size_t>(n + 1), Rational(0));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) c[static_cast<size_t>(i + j)] += (*this)[i] * o[j];
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    int n = std::min(order(), o.order());
    std::vector<Rational> c;
    for (int i = 0; i <= n; ++i) c.push_back((*this)[i] + o[i]);
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
    return *this + o.scaled(-1);
}

PowerSeries PowerSeries::scaled(const Rational& r) const {
    std::vector<Rational> c = c_;
    for (auto& x : c) x *= r;
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::inverse() const {
    if (c_.empty() || c_[0] == 0) throw std::domain_error("power series not invertible");
    int n = order();
    std::vector<Rational> b(static_cast<size_t>(n + 1), Rational(0));
    b[0] = 1 / c_[0];
    for (int k = 1; k <= n; ++k) {
        Rational s(0);
        for (int i = 1; i <= k; ++i) s += (*this)[i] * b[static_cast<size_t>(k - i)];
        b[static_cast<size_t>(k)] = -s / c_[0];
    }
    return PowerSeries(std::move(b));
}

PowerSeries PowerSeries::even() const {
    std::vector<Rational> c = c_;
    for (size_t i = 1; i < c.size(); i += 2) c[i] = 0;
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::odd() const {
    std::vector<Rational> c = c_;
    for (size_t i = 0; i < c.size(); i += 2) c[i] = 0;
    return PowerSeries(std::move(c));
}

DiffPoly apply_series(const PowerSeries& s, const DiffPoly& f) {
    int top = std::min(s.order(), f.trunc().eps_max);
    DiffPoly out = f * Rational(0);
    DiffPoly d = f;
    for (int m = 0; m <= top; ++m) {
        if (m > 0) d = dx(d);
        if (s[m] != 0) out += d.times_eps(m) * s[m];
    }
    return out;
}

}  // namespace drham

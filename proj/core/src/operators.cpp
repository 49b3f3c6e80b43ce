#include "drham/operators.hpp"

#include "drham/series.hpp"
#include "json_util.hpp"

#include <sstream>

namespace drham {

RationalMatrix matrix_inverse(const RationalMatrix& m) {
    size_t n = m.size();
    RationalMatrix a = m, inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw DimensionMismatch("matrix is not square");
        inv[i][i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("matrix is singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rational d = 1 / a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] *= d;
            inv[c][j] *= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

bool is_symmetric(const RationalMatrix& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j)
            if (m[i][j] != m[j][i]) return false;
    return true;
}

OperatorPoly OperatorPoly::dx_power(int nvars, int j, const Coefficient& c, TruncationConfig trunc) {
    OperatorPoly op(nvars, trunc);
    op.add(j, DiffPoly::constant(nvars, c, trunc));
    return op;
}

OperatorPoly OperatorPoly::multiplication(const DiffPoly& a) {
    OperatorPoly op(a.nvars(), a.trunc());
    op.add(0, a);
    return op;
}

DiffPoly OperatorPoly::coeff(int j) const {
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? DiffPoly(nvars_, trunc_) : it->second;
}

void OperatorPoly::add(int j, const DiffPoly& a) {
    if (a.nvars() != nvars_) throw DimensionMismatch("operator coefficient of wrong dimension");
    if (j < 0) throw std::invalid_argument("negative dx power");
    auto it = coeffs_.find(j);
    if (it == coeffs_.end()) {
        DiffPoly c = a.with_trunc(trunc_);
        if (!c.is_zero()) coeffs_.emplace(j, std::move(c));
        return;
    }
    it->second += a;
    if (it->second.is_zero()) coeffs_.erase(it);
}

DiffPoly OperatorPoly::apply(const DiffPoly& f) const {
    DiffPoly out = f.with_trunc(trunc_) * Rational(0);
    for (auto& [j, a] : coeffs_) out += a * dx(f, j);
    return out;
}

OperatorPoly OperatorPoly::map_coefficients(const std::function<DiffPoly(const DiffPoly&)>& f) const {
    OperatorPoly out(nvars_, trunc_);
    for (auto& [j, a] : coeffs_) {
        DiffPoly c = f(a);
        if (out.coeffs_.empty()) {
            out.nvars_ = c.nvars();
        }
        out.add(j, c);
    }
    return out;
}

OperatorPoly& OperatorPoly::operator+=(const OperatorPoly& o) {
    trunc_ = trunc_.tighter(o.trunc_);
    for (auto& [j, a] : o.coeffs_) add(j, a);
    return *this;
}

OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) {
    return a += Coefficient(-1) * b;
}

OperatorPoly operator*(const Coefficient& c, OperatorPoly a) {
    for (auto it = a.coeffs_.begin(); it != a.coeffs_.end();) {
        it->second *= c;
        if (it->second.is_zero())
            it = a.coeffs_.erase(it);
        else
            ++it;
    }
    return a;
}

bool OperatorPoly::operator==(const OperatorPoly& o) const {
    return nvars_ == o.nvars_ && coeffs_ == o.coeffs_;
}

std::string OperatorPoly::str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (auto& [j, a] : coeffs_) {
        if (!out.empty()) out += " + ";
        out += "(" + a.str() + ")";
        if (j == 1)
            out += "*dx";
        else if (j > 1)
            out += "*dx^" + std::to_string(j);
    }
    return out;
}

OperatorPoly compose(const OperatorPoly& a, const OperatorPoly& b) {
    if (a.nvars() != b.nvars()) throw DimensionMismatch("composing operators of different dimension");
    OperatorPoly out(a.nvars(), a.trunc().tighter(b.trunc()));
    for (auto& [j, bj] : b.coeffs()) {
        // dx^m(b_j), computed once per j
        std::vector<DiffPoly> derivs{bj};
        for (auto& [i, ai] : a.coeffs()) {
            while (static_cast<int>(derivs.size()) <= i) derivs.push_back(dx(derivs.back()));
            for (int m = 0; m <= i; ++m) out.add(i - m + j, ai * derivs[static_cast<size_t>(m)] * binomial(i, m));
        }
    }
    return out;
}

HamiltonianOperator::HamiltonianOperator(int n, TruncationConfig trunc)
    : n_(n), entries_(static_cast<size_t>(n * n), OperatorPoly(n, trunc)) {}

HamiltonianOperator HamiltonianOperator::standard(const RationalMatrix& eta_inverse, TruncationConfig trunc) {
    int n = static_cast<int>(eta_inverse.size());
    HamiltonianOperator k(n, trunc);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            const Rational& v = eta_inverse[static_cast<size_t>(a - 1)][static_cast<size_t>(b - 1)];
            if (v != 0) k.at(a, b) = OperatorPoly::dx_power(n, 1, Coefficient(v), trunc);
        }
    return k;
}

std::vector<DiffPoly> HamiltonianOperator::apply(const std::vector<DiffPoly>& v) const {
    if (static_cast<int>(v.size()) != n_) throw DimensionMismatch("operator applied to a vector of wrong length");
    std::vector<DiffPoly> out;
    for (int mu = 1; mu <= n_; ++mu) {
        DiffPoly acc = v[0] * Rational(0);
        for (int nu = 1; nu <= n_; ++nu) acc += at(mu, nu).apply(v[static_cast<size_t>(nu - 1)]);
        out.push_back(std::move(acc));
    }
    return out;
}

std::string HamiltonianOperator::str() const {
    std::ostringstream os;
    for (int a = 1; a <= n_; ++a)
        for (int b = 1; b <= n_; ++b) os << "K^{" << a << b << "} = " << at(a, b).str() << "\n";
    return os.str();
}

std::string HamiltonianOperator::to_json(int indent) const {
    nlohmann::json rows = nlohmann::json::array();
    for (int a = 1; a <= n_; ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (int b = 1; b <= n_; ++b) {
            nlohmann::json entry = nlohmann::json::array();
            for (auto& [j, c] : at(a, b).coeffs()) entry.push_back({{"j", j}, {"coeff", diffpoly_json(c)}});
            row.push_back(entry);
        }
        rows.push_back(row);
    }
    return nlohmann::json{{"entries", rows}}.dump(indent);
}

namespace {

std::vector<DiffPoly> variational_vector(const LocalFunctional& g) {
    std::vector<DiffPoly> v;
    for (int a = 1; a <= g.nvars(); ++a) v.push_back(variational_derivative(g, a));
    return v;
}

}  // namespace

LocalFunctional bracket_ff(const LocalFunctional& f, const LocalFunctional& g, const HamiltonianOperator& k) {
    if (f.nvars() != g.nvars() || f.nvars() != k.n()) throw DimensionMismatch("bracket of mismatched dimensions");
    std::vector<DiffPoly> kg = k.apply(variational_vector(g));
    DiffPoly acc = kg[0] * Rational(0);
    for (int mu = 1; mu <= f.nvars(); ++mu) acc += variational_derivative(f, mu) * kg[static_cast<size_t>(mu - 1)];
    return integrate(acc);
}

DiffPoly bracket_df(const DiffPoly& f, const LocalFunctional& g, const HamiltonianOperator& k) {
    if (f.nvars() != g.nvars() || f.nvars() != k.n()) throw DimensionMismatch("bracket of mismatched dimensions");
    std::vector<DiffPoly> kg = k.apply(variational_vector(g));
    std::map<int, int> kmax;
    for (auto& [key, c] : f.terms())
        for (auto& fa : key.mono) kmax[fa.alpha] = std::max(kmax[fa.alpha], fa.k);
    DiffPoly acc = (f * kg[0]) * Rational(0);
    for (auto& [mu, top] : kmax) {
        DiffPoly d = kg[static_cast<size_t>(mu - 1)];
        for (int i = 0; i <= top; ++i) {
            if (i > 0) d = dx(d);
            DiffPoly p = partial(f, {mu, i});
            if (!p.is_zero()) acc += p * d;
        }
    }
    return acc;
}

MiuraMap MiuraMap::identity(int n, TruncationConfig trunc) {
    MiuraMap m;
    for (int a = 1; a <= n; ++a) m.images.push_back(DiffPoly::jet(n, a, 0, trunc));
    return m;
}

MiuraMap MiuraMap::inverse() const {
    check_miura_shape(images);
    int n = this->n();
    TruncationConfig t;
    for (auto& img : images) t = t.tighter(img.trunc());
    std::vector<DiffPoly> tail;
    bool nontrivial = false;
    for (int a = 1; a <= n; ++a) {
        tail.push_back(images[static_cast<size_t>(a - 1)].with_trunc(t) - DiffPoly::jet(n, a, 0, t));
        nontrivial = nontrivial || !tail.back().is_zero();
    }
    if (!nontrivial) return identity(n, t);
    if (t.eps_max >= kUnbounded) throw std::invalid_argument("inverting a Miura map needs a finite eps bound");
    MiuraMap inv = identity(n, t);
    // each sweep fixes one more power of eps
    for (int it = 0; it <= t.eps_max + 1; ++it) {
        MiuraMap next;
        for (int a = 1; a <= n; ++a)
            next.images.push_back(DiffPoly::jet(n, a, 0, t) - substitute(tail[static_cast<size_t>(a - 1)], inv.images));
        if (next.images == inv.images) break;
        inv = std::move(next);
    }
    return inv;
}

DiffPoly miura_poly(const DiffPoly& f, const MiuraMap& m, MiuraDirection dir) {
    if (dir == MiuraDirection::forward) return substitute(f, m.images);
    return substitute(f, m.inverse().images);
}

LocalFunctional miura_poly(const LocalFunctional& f, const MiuraMap& m, MiuraDirection dir) {
    return integrate(miura_poly(f.repr(), m, dir));
}

HamiltonianOperator miura_operator(const HamiltonianOperator& k, const MiuraMap& m) {
    int n = k.n();
    if (m.n() != n) throw DimensionMismatch("Miura map and operator of different dimension");
    check_miura_shape(m.images);
    TruncationConfig t;
    for (auto& img : m.images) t = t.tighter(img.trunc());
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) t = t.tighter(k.at(a, b).trunc());
    // A^{alpha mu} = sum_p d(new^alpha)/du^mu_p dx^p, B^{nu beta} = sum_q (-dx)^q o d(new^beta)/du^nu_q
    std::vector<OperatorPoly> A(static_cast<size_t>(n * n), OperatorPoly(n, t)), B = A;
    bool constant_jacobian = true;
    for (int a = 1; a <= n; ++a) {
        const DiffPoly img = m.images[static_cast<size_t>(a - 1)].with_trunc(t);
        std::map<int, int> kmax;
        for (auto& [key, c] : img.terms())
            for (auto& fa : key.mono) kmax[fa.alpha] = std::max(kmax[fa.alpha], fa.k);
        for (auto& [mu, top] : kmax) {
            for (int p = 0; p <= top; ++p) {
                DiffPoly l = partial(img, {mu, p});
                if (l.is_zero()) continue;
                if (l.size() > 1 || !l.terms().begin()->first.mono.empty()) constant_jacobian = false;
                A[static_cast<size_t>((a - 1) * n + mu - 1)].add(p, l);
                OperatorPoly minus_dx_q = OperatorPoly::dx_power(n, p, Coefficient(p % 2 ? -1 : 1), t);
                B[static_cast<size_t>((mu - 1) * n + a - 1)] += compose(minus_dx_q, OperatorPoly::multiplication(l));
            }
        }
    }
    HamiltonianOperator out(n, t);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            OperatorPoly acc(n, t);
            for (int mu = 1; mu <= n; ++mu) {
                const OperatorPoly& amu = A[static_cast<size_t>((a - 1) * n + mu - 1)];
                if (amu.is_zero()) continue;
                for (int nu = 1; nu <= n; ++nu) {
                    const OperatorPoly& bnu = B[static_cast<size_t>((nu - 1) * n + b - 1)];
                    if (bnu.is_zero() || k.at(mu, nu).is_zero()) continue;
                    acc += compose(compose(amu, k.at(mu, nu)), bnu);
                }
            }
            out.at(a, b) = acc;
        }
    // rewrite coefficients in the new variables
    bool constant_k = true;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (auto& [j, c] : k.at(a, b).coeffs())
                if (c.size() > 1 || (!c.is_zero() && !c.terms().begin()->first.mono.empty())) constant_k = false;
    if (!(constant_jacobian && constant_k)) {
        MiuraMap inv = MiuraMap{m.images}.inverse();
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                out.at(a, b) = out.at(a, b).map_coefficients([&](const DiffPoly& c) { return substitute(c, inv.images); });
    }
    return out;
}

Report tau_symmetry_check(const DensityFamily& h, const HamiltonianOperator& k, int p_max) {
    Report r;
    r.check = "tau_symmetry";
    std::vector<std::pair<int, int>> idx;
    for (auto& [key, d] : h)
        if (key.second >= 0 && key.second <= p_max && h.count({key.first, key.second - 1})) idx.push_back(key);
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j) {
            auto [a, p] = idx[i];
            auto [b, q] = idx[j];
            DiffPoly lhs = bracket_df(h.at({a, p - 1}), integrate(h.at({b, q})), k);
            DiffPoly rhs = bracket_df(h.at({b, q - 1}), integrate(h.at({a, p})), k);
            DiffPoly res = lhs - rhs;
            std::string tag = "(" + std::to_string(a) + "," + std::to_string(p) + ")|(" + std::to_string(b) + "," +
                              std::to_string(q) + ")";
            r.add(tag, res.is_zero(), res.str());
        }
    return r;
}

DensityFamily tau_densities(const FunctionalFamily& gbar) {
    DensityFamily h;
    for (auto& [key, g] : gbar) h[{key.first, key.second - 1}] = variational_derivative(g, 1);
    return h;
}

}  // namespace drham

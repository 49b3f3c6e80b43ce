#include "drham/toda.hpp"

#include "drham/parse.hpp"
#include "drham/seed.hpp"
#include "drham/series.hpp"
#include "json_util.hpp"

#include <sstream>

namespace drham {

namespace {

Coefficient q_param() {
    return Coefficient::param("q");
}

int series_order(const TruncationConfig& t) {
    if (t.eps_max >= kUnbounded) throw std::invalid_argument("series operator needs a finite eps bound");
    return t.eps_max;
}

// sum_n c_n eps^{n-1} dx^n / n! with c_n = 1 (forward) or (-1)^{n-1} (backward)
OperatorPoly difference_quotient(int nvars, bool forward, TruncationConfig t) {
    OperatorPoly op(nvars, t);
    for (int n = 1; n <= t.eps_max + 1; ++n) {
        Rational c = 1 / factorial(n);
        if (!forward && n % 2 == 0) c = -c;
        op.add(n, DiffPoly::term(nvars, n - 1, {}, Coefficient(c), t));
    }
    return op;
}

}  // namespace

ShiftOperator::ShiftOperator(int nvars, TruncationConfig trunc) : nvars_(nvars), trunc_(trunc) {}

ShiftOperator ShiftOperator::shift(int nvars, int k, TruncationConfig trunc) {
    ShiftOperator s(nvars, trunc);
    s.add(k, DiffPoly::constant(nvars, Coefficient(1), trunc));
    return s;
}

ShiftOperator ShiftOperator::multiplication(const DiffPoly& a) {
    ShiftOperator s(a.nvars(), a.trunc());
    s.add(0, a);
    return s;
}

DiffPoly ShiftOperator::coeff(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? DiffPoly(nvars_, trunc_) : it->second;
}

void ShiftOperator::add(int k, const DiffPoly& a) {
    if (a.nvars() != nvars_) throw DimensionMismatch("shift operator coefficient has the wrong number of variables");
    trunc_ = trunc_.tighter(a.trunc());
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
        if (!a.is_zero()) coeffs_.emplace(k, a.with_trunc(trunc_));
        return;
    }
    it->second += a;
    if (it->second.is_zero()) coeffs_.erase(it);
}

ShiftOperator& ShiftOperator::operator+=(const ShiftOperator& o) {
    for (auto& [k, a] : o.coeffs_) add(k, a);
    return *this;
}

ShiftOperator& ShiftOperator::operator-=(const ShiftOperator& o) {
    for (auto& [k, a] : o.coeffs_) add(k, -a);
    return *this;
}

ShiftOperator operator*(const Coefficient& c, ShiftOperator a) {
    ShiftOperator out(a.nvars_, a.trunc_);
    for (auto& [k, f] : a.coeffs_) out.add(k, c * f);
    return out;
}

bool ShiftOperator::operator==(const ShiftOperator& o) const {
    return nvars_ == o.nvars_ && coeffs_ == o.coeffs_;
}

std::string ShiftOperator::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, a] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << a.str() << ")";
        if (k != 0) os << "*E^" << k;
    }
    return os.str();
}

std::string ShiftOperator::to_json(int indent) const {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [k, a] : coeffs_) terms.push_back({{"k", k}, {"coeff", diffpoly_json(a)}});
    return nlohmann::json{{"terms", terms}}.dump(indent);
}

ShiftOperator ShiftOperator::from_json(std::string_view text, int nvars, TruncationConfig trunc) {
    auto j = nlohmann::json::parse(text);
    ShiftOperator s(nvars, trunc);
    for (auto& t : j.at("terms")) s.add(t.at("k").get<int>(), diffpoly_from_json(t.at("coeff"), trunc));
    return s;
}

DiffPoly shift_by(const DiffPoly& a, int k) {
    if (k == 0) return a;
    return apply_series(PowerSeries::exp_linear(Rational(k), series_order(a.trunc())), a);
}

ShiftOperator shift_compose(const ShiftOperator& a, const ShiftOperator& b) {
    if (a.nvars() != b.nvars()) throw DimensionMismatch("composing shift operators in different variables");
    ShiftOperator out(a.nvars(), a.trunc().tighter(b.trunc()));
    for (auto& [i, x] : a.coeffs())
        for (auto& [j, y] : b.coeffs()) out.add(i + j, x * shift_by(y.with_trunc(out.trunc()), i));
    return out;
}

ShiftOperator shift_power(const ShiftOperator& a, int n) {
    if (n < 0) throw std::invalid_argument("shift_power: negative exponent");
    ShiftOperator out = ShiftOperator::shift(a.nvars(), 0, a.trunc());
    for (int i = 0; i < n; ++i) out = shift_compose(out, a);
    return out;
}

DiffPoly shift_residue(const ShiftOperator& a) {
    return a.coeff(0);
}

DiffPoly even_part(const DiffPoly& f) {
    DiffPoly out = f * Rational(0);
    for (auto& [k, c] : f.terms())
        if (k.eps % 2 == 0) out.add_term(k.eps, k.mono, c);
    return out;
}

ShiftOperator toda_lax(TruncationConfig t) {
    series_order(t);
    if (!t.u_deg_max) throw std::invalid_argument("toda_lax needs u_deg_max");
    ShiftOperator l = ShiftOperator::shift(2, 1, t);
    l.add(0, DiffPoly::jet(2, 1, 0, t));
    l.add(-1, q_param() * exp_series(DiffPoly::jet(2, 2, 0, t)));
    return l;
}

LocalFunctional toda_hamiltonian_omega(int p, TruncationConfig trunc) {
    if (p < 0) throw std::invalid_argument("toda_hamiltonian_omega: p must be nonnegative");
    DiffPoly res = shift_residue(shift_power(toda_lax(trunc), p + 2));
    return integrate(res * (1 / factorial(p + 2)));
}

MiuraMap toda_v_of_u(TruncationConfig t) {
    int order = series_order(t);
    MiuraMap m;
    m.images.push_back(apply_series(PowerSeries::exp_linear(frac(1, 2), order), DiffPoly::jet(2, 1, 0, t)));
    m.images.push_back(apply_series(PowerSeries::S(order), DiffPoly::jet(2, 2, 0, t)));
    return m;
}

LocalFunctional toda_to_u(const LocalFunctional& h) {
    return miura_poly(h, toda_v_of_u(h.repr().trunc()));
}

LocalFunctional ancestor_omega0(const LocalFunctional& h_td) {
    const auto& t = h_td.repr().trunc();
    return h_td - integrate(q_param() * DiffPoly::jet(2, 2, 0, t));
}

HamiltonianOperator toda_operator(TruncationConfig t) {
    series_order(t);
    HamiltonianOperator k(2, t);
    k.at(1, 2) = difference_quotient(2, true, t);
    k.at(2, 1) = difference_quotient(2, false, t);
    return k;
}

HamiltonianOperator toda_operator_in_u(TruncationConfig t) {
    int order = series_order(t);
    // w^1 = eps dx/(e^{eps dx}-1) v^1,  w^w = eps^2 dx^2/(e^{eps dx}+e^{-eps dx}-2) v^2 = S^{-2} v^2
    PowerSeries s = PowerSeries::S(order);
    MiuraMap w_of_v;
    w_of_v.images.push_back(apply_series(PowerSeries::bernoulli_plus(order), DiffPoly::jet(2, 1, 0, t)));
    w_of_v.images.push_back(apply_series((s * s).inverse(), DiffPoly::jet(2, 2, 0, t)));
    // u = S(eps dx) w
    MiuraMap u_of_w;
    for (int a = 1; a <= 2; ++a) u_of_w.images.push_back(apply_series(s, DiffPoly::jet(2, a, 0, t)));
    return miura_operator(miura_operator(toda_operator(t), w_of_v), u_of_w);
}

Rational harmonic_binomial_sum(int k) {
    Rational c = 0;
    for (int i = 1; i <= k; ++i) c += binomial(k, i) * (i % 2 ? 1 : -1) / Rational(i);
    return c;
}

Report harmonic_identity_check(int k_max) {
    if (k_max < 1) throw std::invalid_argument("harmonic_identity_check: k_max must be positive");
    Report r;
    r.check = "harmonic";
    for (int k = 1; k <= k_max; ++k) {
        Rational c = harmonic_binomial_sum(k);
        r.add("C_" + std::to_string(k), c == harmonic(k), to_string(c - harmonic(k)));
        if (k > 1) {
            Rational step = c - harmonic_binomial_sum(k - 1) - Rational(1, k);
            r.add("C_" + std::to_string(k) + "-C_" + std::to_string(k - 1), step == 0, to_string(step));
        }
    }
    return r;
}

Report toda_degree_zero_check(int p_max, TruncationConfig t) {
    Report r;
    r.check = "toda-degree-zero";
    ShiftOperator l0 = ShiftOperator::shift(2, 1, t);
    l0.add(0, DiffPoly::jet(2, 1, 0, t));
    ShiftOperator pw = shift_power(l0, 2);
    for (int p = 0; p <= p_max; ++p) {
        if (p > 0) pw = shift_compose(pw, l0);
        DiffPoly res = shift_residue(pw) - pow(DiffPoly::jet(2, 1, 0, t), p + 2);
        r.add("p=" + std::to_string(p), res.is_zero(), res.str());
    }
    return r;
}

Report toda_omega0_check(TruncationConfig t) {
    Report r;
    r.check = "toda-omega0";
    Coefficient q = q_param();
    DiffPoly v1 = DiffPoly::jet(2, 1, 0, t), v2 = DiffPoly::jet(2, 2, 0, t);

    LocalFunctional hv = toda_hamiltonian_omega(0, t);
    LocalFunctional ev = integrate(v1 * v1 * frac(1, 2) + q * exp_series(v2));
    r.add("v-variables", equals(hv, ev), (hv - ev).str());

    LocalFunctional hu = toda_to_u(hv);
    DiffPoly su = apply_series(PowerSeries::S(t.eps_max), v2);
    LocalFunctional eu = integrate(v1 * v1 * frac(1, 2) + q * exp_series(su));
    r.add("u-variables", equals(hu, eu), (hu - eu).str());

    LocalFunctional anc = ancestor_omega0(hu);
    CftSeed cp1 = get_seed("cp1", t);
    const LocalFunctional& known = cp1.known.at({2, 0});
    r.add("ancestor", equals(anc, known), (anc - known).str());
    return r;
}

Report toda_h11_check(int eps_max) {
    TruncationConfig t;
    t.eps_max = eps_max;
    Report r;
    r.check = "toda-h11";
    DiffPoly v1 = DiffPoly::jet(2, 1, 0, t), v2 = DiffPoly::jet(2, 2, 0, t);
    PowerSeries bp = PowerSeries::bernoulli_plus(eps_max), bm = PowerSeries::bernoulli_minus(eps_max);

    // S^0 = B+ v^1 E^{-1} + (B+ (v^1)^2 / 2 - v^1(x - eps) B+ v^1) E^{-2} + ...
    ShiftOperator s0(2, t);
    s0.add(-1, apply_series(bp, v1));
    s0.add(-2, apply_series(bp, v1 * v1) * frac(1, 2) - shift_by(v1, -1) * apply_series(bp, v1));
    ShiftOperator base = ShiftOperator::shift(2, 1, t);
    base.add(0, v1);
    DiffPoly res = shift_residue(shift_compose(shift_power(base, 2), s0));

    LocalFunctional printed = integrate(v1 * v1 * frac(1, 2) + v1 * apply_series(bp, v1));
    r.add("residue", equals(integrate(res), printed), (integrate(res) - printed).str());

    DiffPoly ev = even_part(res);
    LocalFunctional lead = integrate(ev.eps_part(0));
    LocalFunctional lead_expected = integrate(v1 * v1 * frac(3, 2));
    r.add("eps^0", equals(lead, lead_expected), (lead - lead_expected).str());
    for (int g = 1; 2 * g <= eps_max; ++g) {
        LocalFunctional got = integrate(ev.eps_part(2 * g));
        LocalFunctional want =
            integrate(DiffPoly::term(2, 2 * g, {{1, 0, 1}, {1, 2 * g, 1}}, Coefficient(bernoulli(2 * g) / factorial(2 * g)), t));
        r.add("eps^" + std::to_string(2 * g), equals(got, want), (got - want).str());
    }

    // 2/(p+1)! Res(... o (S^0 - H_2))^{ev} at p = 1
    DiffPoly dens = v1 * v1 * apply_series(bm, v2) * frac(1, 2) + ev - v1 * v1 * harmonic(2);
    LocalFunctional hu = toda_to_u(integrate(dens));
    DiffPoly expected = parse_diffpoly("u1^2*u2/2", 2, t);
    for (int g = 1; 2 * g <= eps_max; ++g)
        expected += DiffPoly::term(2, 2 * g, {{1, 0, 1}, {1, 2 * g, 1}}, Coefficient(bernoulli(2 * g) / factorial(2 * g)), t);
    LocalFunctional eu = integrate(expected);
    r.add("u-variables", equals(hu, eu), (hu - eu).str());
    return r;
}

Report cp1_operator_check(int eps_max) {
    TruncationConfig t;
    t.eps_max = eps_max;
    Report r;
    r.check = "cp1-operator[eps=" + std::to_string(eps_max) + "]";
    HamiltonianOperator k = toda_operator_in_u(t);
    RationalMatrix eta = {{0, 1}, {1, 0}};
    HamiltonianOperator want = HamiltonianOperator::standard(eta, t);
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            OperatorPoly d = k.at(a, b) - want.at(a, b);
            r.add("K[" + std::to_string(a) + "][" + std::to_string(b) + "]", d.is_zero(), d.str());
        }
    return r;
}

Report omega_identity_check(int u_deg_max, int eps_max) {
    TruncationConfig t;
    t.eps_max = eps_max;
    t.u_deg_max = u_deg_max;
    Report r;
    r.check = "omega-identity[udeg=" + std::to_string(u_deg_max) + ",eps=" + std::to_string(eps_max) + "]";
    DiffPoly u = DiffPoly::jet(1, 1, 0, t);
    PowerSeries s = PowerSeries::S(eps_max);
    DiffPoly e = exp_series(apply_series(s, u));
    DiffPoly f = dx(apply_series(s, e));

    DiffPoly lhs = euler_D(f) - f * Rational(2);
    DiffPoly rhs = u * f;
    for (int g = 1; 2 * g <= eps_max; ++g) rhs += dx(f, 2 * g).times_eps(2 * g) * (bernoulli(2 * g) / factorial(2 * g) * 2);
    DiffPoly d1 = lhs - rhs;
    r.add("(D-2) form", d1.is_zero(), d1.str());

    // (e^{eps dx/2} - e^{-eps dx/2}) D e^{Su} = u (..) e^{Su} + (eps dx/2)(e^{eps dx/2} + e^{-eps dx/2}) e^{Su}
    PowerSeries plus = PowerSeries::exp_linear(frac(1, 2), eps_max), minus = PowerSeries::exp_linear(frac(-1, 2), eps_max);
    PowerSeries diff = plus - minus, sum = plus + minus;
    DiffPoly lhs3 = apply_series(diff, euler_D(e));
    DiffPoly rhs3 = u * apply_series(diff, e) + apply_series(sum, dx(e)).times_eps(1) * frac(1, 2);
    DiffPoly d3 = lhs3 - rhs3;
    r.add("difference form", d3.is_zero(), d3.str());
    return r;
}

std::map<std::pair<int, int>, DiffPoly> omega_r_components(int d_max, int g_max) {
    TruncationConfig t;
    t.eps_max = 2 * g_max;
    t.u_deg_max = d_max;
    DiffPoly u = DiffPoly::jet(1, 1, 0, t);
    std::map<std::pair<int, int>, DiffPoly> r;
    for (int g = 0; g <= g_max; ++g) r[{0, g}] = DiffPoly(1, t);
    for (int d = 1; d <= d_max; ++d)
        for (int g = 0; g <= g_max; ++g) {
            if (d == 1 && g == 0) {
                r[{1, 0}] = u;
                continue;
            }
            DiffPoly rhs = u * dx(r[{d - 1, g}]);
            for (int g1 = 1; g1 <= g; ++g1)
                rhs += dx(r[{d, g - g1}], 2 * g1 + 1).times_eps(2 * g1) * (bernoulli(2 * g1) / factorial(2 * g1) * 2);
            r[{d, g}] = dx_inverse(rhs) * Rational(1, d + 2 * g - 1);
        }
    return r;
}

Report omega_r_recursion(int d_max, int g_max) {
    Report rep;
    rep.check = "omega-r";
    auto r = omega_r_components(d_max, g_max);
    TruncationConfig t;
    t.eps_max = 2 * g_max;
    t.u_deg_max = d_max;
    PowerSeries s = PowerSeries::S(t.eps_max);
    DiffPoly closed = apply_series(s, exp_series(apply_series(s, DiffPoly::jet(1, 1, 0, t)))) -
                      DiffPoly::constant(1, Coefficient(1), t);
    for (int d = 1; d <= d_max; ++d)
        for (int g = 0; g <= g_max; ++g) {
            DiffPoly part(1, t), slice = closed.eps_part(2 * g);
            for (auto& [k, c] : slice.terms())
                if (k.udeg == d) part.add_term(k.eps, k.mono, c);
            DiffPoly diff = r[{d, g}] - part;
            rep.add("r[" + std::to_string(d) + "][" + std::to_string(g) + "]", diff.is_zero(), diff.str());
        }
    return rep;
}

}  // namespace drham

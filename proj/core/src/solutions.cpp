#include "drham/solutions.hpp"

#include "drham/parallel.hpp"
#include "drham/series.hpp"
#include "json_util.hpp"

#include <sstream>

namespace drham {

namespace {

int qid() {
    static const int id = param_id("q");
    return id;
}

std::string time_name(const TimeIndex& ti, int i) {
    return "t" + std::to_string(ti.beta(i)) + "_" + std::to_string(ti.d(i));
}

// eta^{alpha mu} dx delta gbar / delta u^mu for every alpha
std::vector<DiffPoly> flow_polys(const Hierarchy& h, int beta, int d) {
    RationalMatrix inv = h.seed.eta_inverse();
    const LocalFunctional& g = h.gbar(beta, d);
    std::vector<DiffPoly> vd;
    for (int mu = 1; mu <= h.n(); ++mu) vd.push_back(variational_derivative(g, mu));
    std::vector<DiffPoly> out;
    for (int a = 1; a <= h.n(); ++a) {
        DiffPoly r(h.n(), h.trunc);
        for (int mu = 1; mu <= h.n(); ++mu) {
            const Rational& e = inv[static_cast<size_t>(a - 1)][static_cast<size_t>(mu - 1)];
            if (e != 0) r += dx(vd[static_cast<size_t>(mu - 1)]) * e;
        }
        out.push_back(std::move(r));
    }
    return out;
}

void check_precision(const Hierarchy& h, const std::vector<DiffPoly>& polys, int t_max, int beta, int d) {
    if (!h.trunc.u_deg_max) return;
    int need = required_u_degree(h, t_max);
    for (auto& p : polys)
        if (p.u_prec() < need)
            throw std::invalid_argument("flow of gbar" + pair_label(beta, d) + " is exact only through u-degree " +
                                        std::to_string(p.u_prec()) + ", the solution needs " + std::to_string(need) +
                                        "; raise u_deg_max");
}

Report checked(std::string name, const FormalSolution& u, const std::vector<Series>& residuals) {
    Report r;
    r.check = std::move(name);
    for (size_t a = 0; a < residuals.size(); ++a) {
        Series res = residuals[a].up_to_degree(u.t_max - 1);
        r.add("u^" + std::to_string(a + 1), res.is_zero(), res.str());
    }
    return r;
}

}  // namespace

int time_degree(const SeriesKey& k) {
    int s = 0;
    for (int e : k.t) s += e;
    return s;
}

Series Series::constant(const Series& like, const Coefficient& c, int eps) {
    Series s(like.times_, like.t_max_, like.trunc_);
    SeriesKey k;
    k.t.assign(static_cast<size_t>(like.times_.size()), 0);
    k.eps = eps;
    s.add(k, c);
    return s;
}

Series Series::x(const Series& like) {
    Series s(like.times_, like.t_max_, like.trunc_);
    SeriesKey k;
    k.t.assign(static_cast<size_t>(like.times_.size()), 0);
    k.x = 1;
    s.add(k, Coefficient(1));
    return s;
}

Series Series::time(const Series& like, int beta, int d) {
    Series s(like.times_, like.t_max_, like.trunc_);
    SeriesKey k;
    k.t.assign(static_cast<size_t>(like.times_.size()), 0);
    k.t[static_cast<size_t>(like.times_.of(beta, d))] = 1;
    s.add(k, Coefficient(1));
    return s;
}

void Series::add(const SeriesKey& k, const Coefficient& c) {
    if (c.is_zero() || k.eps > trunc_.eps_max || time_degree(k) > t_max_) return;
    Coefficient cc = c;
    if (trunc_.q_max) cc.truncate_param(qid(), *trunc_.q_max);
    if (cc.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(k, cc);
    if (fresh) return;
    it->second += cc;
    if (it->second.is_zero()) terms_.erase(it);
}

Series& Series::operator+=(const Series& o) {
    for (auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

Series& Series::operator-=(const Series& o) {
    for (auto& [k, c] : o.terms_) add(k, -c);
    return *this;
}

Series operator*(const Series& a, const Series& b) {
    Series out(a.times_, a.t_max_, a.trunc_);
    for (auto& [ka, ca] : a.terms_) {
        int da = time_degree(ka);
        for (auto& [kb, cb] : b.terms_) {
            if (da + time_degree(kb) > a.t_max_ || ka.eps + kb.eps > a.trunc_.eps_max) continue;
            SeriesKey k;
            k.t = ka.t;
            for (size_t i = 0; i < k.t.size(); ++i) k.t[i] += kb.t[i];
            k.x = ka.x + kb.x;
            k.eps = ka.eps + kb.eps;
            out.add(k, ca * cb);
        }
    }
    return out;
}

Series operator*(const Coefficient& c, const Series& a) {
    Series out(a.times_, a.t_max_, a.trunc_);
    for (auto& [k, v] : a.terms_) out.add(k, c * v);
    return out;
}

Series Series::dx() const {
    Series out(times_, t_max_, trunc_);
    for (auto& [k, c] : terms_) {
        if (k.x == 0) continue;
        SeriesKey nk = k;
        --nk.x;
        out.add(nk, c * Rational(k.x));
    }
    return out;
}

Series Series::dt(int beta, int d) const {
    Series out(times_, t_max_, trunc_);
    if (d > times_.d_max) return out;
    size_t i = static_cast<size_t>(times_.of(beta, d));
    for (auto& [k, c] : terms_) {
        if (k.t[i] == 0) continue;
        SeriesKey nk = k;
        --nk.t[i];
        out.add(nk, c * Rational(k.t[i]));
    }
    return out;
}

Series Series::times_t(int beta, int d) const {
    Series out(times_, t_max_, trunc_);
    if (d > times_.d_max) return out;
    size_t i = static_cast<size_t>(times_.of(beta, d));
    for (auto& [k, c] : terms_) {
        SeriesKey nk = k;
        ++nk.t[i];
        out.add(nk, c);
    }
    return out;
}

Series Series::q_scaled() const {
    Series out(times_, t_max_, trunc_);
    for (auto& [k, c] : terms_) out.add(k, c.degree_scale(qid()));
    return out;
}

Series Series::degree_part(int n) const {
    Series out(times_, t_max_, trunc_);
    for (auto& [k, c] : terms_)
        if (time_degree(k) == n) out.terms_.emplace(k, c);
    return out;
}

Series Series::up_to_degree(int n) const {
    Series out(times_, t_max_, trunc_);
    for (auto& [k, c] : terms_)
        if (time_degree(k) <= n) out.terms_.emplace(k, c);
    return out;
}

Series Series::primary_slice() const {
    Series out(times_, t_max_, trunc_);
    for (auto& [k, c] : terms_) {
        bool primary = true;
        for (int i = 0; i < times_.size() && primary; ++i)
            if (times_.d(i) > 0 && k.t[static_cast<size_t>(i)] != 0) primary = false;
        if (primary) out.terms_.emplace(k, c);
    }
    return out;
}

std::string Series::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool single = c.terms().size() == 1;
        os << (single ? c.str() : "(" + c.str() + ")");
        if (k.eps) os << "*eps" << (k.eps > 1 ? "^" + std::to_string(k.eps) : "");
        if (k.x) os << "*x" << (k.x > 1 ? "^" + std::to_string(k.x) : "");
        for (int i = 0; i < times_.size(); ++i) {
            int e = k.t[static_cast<size_t>(i)];
            if (e) os << "*" << time_name(times_, i) << (e > 1 ? "^" + std::to_string(e) : "");
        }
    }
    return os.str();
}

std::string FormalSolution::str() const {
    std::ostringstream os;
    for (int a = 1; a <= n; ++a) os << "u^" << a << " = " << u[static_cast<size_t>(a - 1)].str() << "\n";
    return os.str();
}

std::string FormalSolution::to_json(int indent) const {
    nlohmann::json out = nlohmann::json::array();
    for (int a = 1; a <= n; ++a)
        for (auto& [k, c] : u[static_cast<size_t>(a - 1)].terms()) {
            nlohmann::json tm = nlohmann::json::array();
            for (int i = 0; i < times.size(); ++i)
                if (k.t[static_cast<size_t>(i)]) tm.push_back({times.beta(i), times.d(i), k.t[static_cast<size_t>(i)]});
            for (auto& [pm, r] : c.terms()) {
                nlohmann::json e = {{"alpha", a}, {"t_monomial", tm}, {"x_power", k.x}, {"eps", k.eps},
                                    {"q", param_degree(pm, qid())}, {"coeff", rational_json(r)}};
                for (auto& [id, p] : pm)
                    if (id != qid()) e["params"][param_name(id)] = p;
                out.push_back(std::move(e));
            }
        }
    return out.dump(indent);
}

Series evaluate(const DiffPoly& f, const FormalSolution& u) {
    const Series& like = u.u[0];
    std::map<std::pair<int, int>, Series> jets;
    std::map<std::tuple<int, int, int>, Series> powers;
    auto jet = [&](int a, int k) -> const Series& {
        auto it = jets.find({a, k});
        if (it != jets.end()) return it->second;
        Series s = u.u[static_cast<size_t>(a - 1)];
        for (int i = 0; i < k; ++i) s = s.dx();
        return jets.emplace(std::make_pair(a, k), std::move(s)).first->second;
    };
    auto power = [&](int a, int k, int e) -> const Series& {
        auto key = std::make_tuple(a, k, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        Series s = jet(a, k);
        for (int i = 1; i < e; ++i) s = s * jet(a, k);
        return powers.emplace(key, std::move(s)).first->second;
    };
    Series out(like.times(), like.t_max(), like.trunc());
    for (auto& [key, c] : f.terms()) {
        if (key.eps > like.trunc().eps_max) continue;
        Series p = Series::constant(like, c, key.eps);
        for (auto& fa : key.mono) {
            p = p * power(fa.alpha, fa.k, fa.exp);
            if (p.is_zero()) break;
        }
        out += p;
    }
    return out;
}

std::vector<Series> flow_rhs(const Hierarchy& h, int beta, int d, const FormalSolution& u) {
    auto polys = flow_polys(h, beta, d);
    check_precision(h, polys, u.t_max, beta, d);
    std::vector<Series> out;
    for (auto& p : polys) out.push_back(evaluate(p, u));
    return out;
}

// In a flow right-hand side the u^1_0-degree is at most d + 1 (string equation)
// and the u^1_1-degree at most eps + 1; every other jet vanishes at t = 0.
int required_u_degree(const Hierarchy& h, int t_max) {
    if (!h.trunc.u_deg_max) return 0;
    if (h.trunc.eps_max >= kUnbounded) throw std::invalid_argument("a u-degree truncation needs a finite eps bound");
    return t_max + h.d_max + h.trunc.eps_max + 1;
}

FormalSolution expand_string_solution(const Hierarchy& h, int t_max) {
    if (t_max < 0) throw std::invalid_argument("expand_string_solution: negative degree");
    FormalSolution u;
    u.n = h.n();
    u.times = {h.n(), std::max(h.d_max, 0)};
    u.t_max = t_max;
    u.trunc = h.trunc;
    Series zero(u.times, t_max, h.trunc);
    u.u.assign(static_cast<size_t>(u.n), zero);
    u.u[0] = Series::x(zero);

    const int nt = u.times.size();
    std::vector<std::vector<DiffPoly>> polys(static_cast<size_t>(nt));
    for (int i = 0; i < nt; ++i) {
        polys[static_cast<size_t>(i)] = flow_polys(h, u.times.beta(i), u.times.d(i));
        check_precision(h, polys[static_cast<size_t>(i)], t_max, u.times.beta(i), u.times.d(i));
    }

    for (int deg = 1; deg <= t_max; ++deg) {
        // rhs[i][alpha]: flow i evaluated on the solution known through degree deg-1
        std::vector<std::vector<Series>> rhs(static_cast<size_t>(nt));
        parallel_for(static_cast<size_t>(nt), [&](size_t i) {
            for (auto& p : polys[i]) rhs[i].push_back(evaluate(p, u).degree_part(deg - 1));
        });
        for (int a = 0; a < u.n; ++a) {
            // candidate coefficients of every new monomial, one per variable it contains
            std::map<SeriesKey, std::map<int, Coefficient>> prop;
            for (int i = 0; i < nt; ++i)
                for (auto& [k, c] : rhs[static_cast<size_t>(i)][static_cast<size_t>(a)].terms()) {
                    SeriesKey nk = k;
                    int e = ++nk.t[static_cast<size_t>(i)];
                    prop[nk][i] = c * Rational(1, e);
                }
            for (auto& [k, byvar] : prop) {
                int canon = -1;
                for (int i = 0; i < nt && canon < 0; ++i)
                    if (k.t[static_cast<size_t>(i)]) canon = i;
                Coefficient val = byvar.count(canon) ? byvar.at(canon) : Coefficient();
                for (int i = 0; i < nt; ++i) {
                    if (!k.t[static_cast<size_t>(i)]) continue;
                    Coefficient other = byvar.count(i) ? byvar.at(i) : Coefficient();
                    if (other != val)
                        throw OrderDependence("flows " + time_name(u.times, canon) + " and " + time_name(u.times, i) +
                                              " disagree on u^" + std::to_string(a + 1) + " at degree " +
                                              std::to_string(deg) + ": " + val.str() + " vs " + other.str());
                }
                u.u[static_cast<size_t>(a)].add(k, val);
            }
        }
    }
    return u;
}

Report verify_string_equation(const FormalSolution& u) {
    std::vector<Series> res;
    for (int a = 1; a <= u.n; ++a) {
        const Series& s = u.u[static_cast<size_t>(a - 1)];
        Series r = s.dt(1, 0);
        for (int b = 1; b <= u.n; ++b)
            for (int d = 0; d < u.times.d_max; ++d) r -= s.dt(b, d).times_t(b, d + 1);
        if (a == 1) r -= Series::constant(s, Coefficient(1));
        res.push_back(std::move(r));
    }
    return checked("string-solution", u, res);
}

Report verify_divisor_equation(const FormalSolution& u, const CftSeed& seed) {
    if (!seed.has_structure_constants() || !seed.divisor_class)
        throw std::invalid_argument("verify_divisor_equation: seed '" + seed.name + "' declares no degree-2 class");
    const int gamma = *seed.divisor_class;
    std::vector<Series> res;
    for (int a = 1; a <= u.n; ++a) {
        const Series& s = u.u[static_cast<size_t>(a - 1)];
        Series r = s.dt(gamma, 0) - s.q_scaled();
        for (int mu = 1; mu <= u.n; ++mu)
            for (int nu = 1; nu <= u.n; ++nu) {
                Coefficient c = seed.c_up(mu, nu, gamma);
                if (c.is_zero()) continue;
                for (int d = 0; d < u.times.d_max; ++d) r -= c * s.dt(mu, d).times_t(nu, d + 1);
            }
        if (a == gamma) r -= Series::constant(s, Coefficient(1));
        res.push_back(std::move(r));
    }
    return checked("divisor-solution", u, res);
}

Report primary_slice_check(const FormalSolution& u) {
    Report r;
    r.check = "primary-slice";
    for (int a = 1; a <= u.n; ++a) {
        const Series& s = u.u[static_cast<size_t>(a - 1)];
        Series want = Series::time(s, a, 0);
        if (a == 1) want += Series::x(s);
        Series diff = s.primary_slice() - want;
        r.add("u^" + std::to_string(a), diff.is_zero(), diff.str());
    }
    return r;
}

Report x_flow_check(const Hierarchy& h, const FormalSolution& u) {
    auto rhs = flow_rhs(h, 1, 0, u);
    Report r;
    r.check = "x-flow";
    for (int a = 1; a <= u.n; ++a) {
        const Series& s = u.u[static_cast<size_t>(a - 1)];
        Series d1 = (s.dt(1, 0) - s.dx()).up_to_degree(u.t_max - 1);
        Series d2 = (rhs[static_cast<size_t>(a - 1)] - s.dx()).up_to_degree(u.t_max - 1);
        r.add("u^" + std::to_string(a), d1.is_zero(), d1.str());
        r.add("rhs u^" + std::to_string(a), d2.is_zero(), d2.str());
    }
    return r;
}

Report cp1_flow_check(const Hierarchy& h, const FormalSolution& u) {
    if (h.n() != 2 || !h.seed.divisor_class) throw std::invalid_argument("cp1_flow_check: needs the cp1 seed");
    const auto& t = h.trunc;
    Report r;
    r.check = "cp1-flow";
    PowerSeries s = PowerSeries::S(t.eps_max);
    DiffPoly w = DiffPoly::jet(2, 2, 0, t);
    std::vector<DiffPoly> want = {
        Coefficient::param("q") * dx(apply_series(s, exp_series(apply_series(s, w))) - DiffPoly::constant(2, Coefficient(1), t)),
        DiffPoly::jet(2, 1, 1, t)};
    auto got = flow_polys(h, 2, 0);
    for (int a = 0; a < 2; ++a) {
        DiffPoly d = got[static_cast<size_t>(a)] - want[static_cast<size_t>(a)];
        r.add("rhs u^" + std::to_string(a + 1), d.is_zero(), d.str());
    }
    for (int a = 0; a < 2; ++a) {
        const Series& ua = u.u[static_cast<size_t>(a)];
        Series d = (ua.dt(2, 0) - evaluate(want[static_cast<size_t>(a)], u)).up_to_degree(u.t_max - 1);
        r.add("solution u^" + std::to_string(a + 1), d.is_zero(), d.str());
    }
    return r;
}

}  // namespace drham

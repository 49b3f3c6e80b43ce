#include "drham/recursion.hpp"

#include "drham/parallel.hpp"
#include "json_util.hpp"

#include <cstdio>
#include <sstream>

namespace drham {

namespace {

int qid() {
    static const int id = param_id("q");
    return id;
}

nlohmann::json trunc_json(const TruncationConfig& t) {
    nlohmann::json j = nlohmann::json::object();
    if (t.eps_max < kUnbounded) j["eps_max"] = t.eps_max;
    if (t.q_max) j["q_max"] = *t.q_max;
    if (t.u_deg_max) j["u_deg_max"] = *t.u_deg_max;
    return j;
}

std::string key(int a, int d) {
    return "g[" + std::to_string(a) + "][" + std::to_string(d) + "]";
}

}  // namespace

std::string pair_label(int alpha, int d) {
    return "(" + std::to_string(alpha) + "," + std::to_string(d) + ")";
}

const DiffPoly& Hierarchy::g(int alpha, int d) const {
    auto it = densities.find({alpha, d});
    if (it == densities.end()) throw std::out_of_range("no density " + key(alpha, d));
    return it->second;
}

const LocalFunctional& Hierarchy::gbar(int alpha, int d) const {
    auto it = hamiltonians.find({alpha, d});
    if (it == hamiltonians.end()) throw std::out_of_range("no hamiltonian " + key(alpha, d));
    return it->second;
}

std::string Hierarchy::str() const {
    std::ostringstream os;
    for (int a = 1; a <= n(); ++a)
        for (int d = -1; d <= d_max; ++d) os << key(a, d) << " = " << g(a, d).str() << "\n";
    return os.str();
}

std::string Hierarchy::to_json(int indent) const {
    nlohmann::json j;
    j["seed"] = seed.name;
    j["N"] = n();
    j["truncation"] = trunc_json(trunc);
    j["densities"] = nlohmann::json::object();
    j["hamiltonians"] = nlohmann::json::object();
    for (auto& [k, f] : densities) j["densities"][key(k.first, k.second)] = diffpoly_json(f);
    for (auto& [k, f] : hamiltonians) j["hamiltonians"][key(k.first, k.second)] = {{"functional", diffpoly_json(f.repr())}};
    return j.dump(indent);
}

Hierarchy hierarchy_from_json(std::string_view text) {
    auto j = nlohmann::json::parse(text);
    Hierarchy h;
    h.seed.name = j.at("seed").get<std::string>();
    h.seed.n = j.at("N").get<int>();
    auto& jt = j.at("truncation");
    if (jt.contains("eps_max")) h.trunc.eps_max = jt["eps_max"].get<int>();
    if (jt.contains("q_max")) h.trunc.q_max = jt["q_max"].get<int>();
    if (jt.contains("u_deg_max")) h.trunc.u_deg_max = jt["u_deg_max"].get<int>();
    for (auto& [k, v] : j.at("densities").items()) {
        int a = 0, d = 0;
        if (std::sscanf(k.c_str(), "g[%d][%d]", &a, &d) != 2) throw std::invalid_argument("bad density key '" + k + "'");
        h.densities[{a, d}] = diffpoly_from_json(v, h.trunc);
        h.d_max = std::max(h.d_max, d);
    }
    for (auto& [k, v] : j.at("hamiltonians").items()) {
        int a = 0, d = 0;
        if (std::sscanf(k.c_str(), "g[%d][%d]", &a, &d) != 2) throw std::invalid_argument("bad hamiltonian key '" + k + "'");
        h.hamiltonians[{a, d}] = integrate(diffpoly_from_json(v.at("functional"), h.trunc));
    }
    return h;
}

DiffPoly dilaton_step(const DiffPoly& g_prev, const LocalFunctional& g11, const RationalMatrix& eta) {
    auto k = HamiltonianOperator::standard(matrix_inverse(eta), g_prev.trunc().tighter(g11.repr().trunc()));
    return d_shift_inverse(dx_inverse(bracket_df(g_prev, g11, k)), 1);
}

Hierarchy build_hierarchy(const CftSeed& seed, int d_max, std::optional<TruncationConfig> trunc) {
    Hierarchy h;
    h.seed = seed;
    h.trunc = trunc ? seed.trunc_default.tighter(*trunc) : seed.trunc_default;
    h.d_max = d_max;
    const int n = seed.n;
    LocalFunctional g11 = seed.g11.with_trunc(h.trunc);
    auto k = seed.poisson(h.trunc);

    for (int a = 1; a <= n; ++a) {
        DiffPoly g(n, h.trunc);
        for (int mu = 1; mu <= n; ++mu) {
            const Rational& e = seed.eta[static_cast<size_t>(a - 1)][static_cast<size_t>(mu - 1)];
            if (e != 0) g += DiffPoly::jet(n, mu, 0, h.trunc) * e;
        }
        h.densities[{a, -1}] = g;
        h.hamiltonians[{a, -1}] = integrate(g);
    }

    for (int d = -1; d < d_max; ++d) {
        std::vector<DiffPoly> prim(static_cast<size_t>(n)), next(static_cast<size_t>(n));
        parallel_for(static_cast<size_t>(n), [&](size_t i) {
            int a = static_cast<int>(i) + 1;
            try {
                DiffPoly rhs = bracket_df(h.g(a, d), g11, k);
                prim[i] = dx_inverse(rhs);
                next[i] = d_shift_inverse(prim[i], 1);
            } catch (const NotExact& e) {
                throw RecursionError(a, d + 1, std::string("right-hand side not exact: ") + e.what());
            } catch (const WeightCollision& e) {
                throw RecursionError(a, d + 1, e.what());
            }
        });
        for (int a = 1; a <= n; ++a) {
            h.primitives[{a, d + 1}] = prim[static_cast<size_t>(a - 1)];
            h.densities[{a, d + 1}] = next[static_cast<size_t>(a - 1)];
            h.hamiltonians[{a, d + 1}] = integrate(next[static_cast<size_t>(a - 1)]);
        }
    }
    return h;
}

Report trr_check(const Hierarchy& h, int beta) {
    Report r;
    r.check = "trr[beta=" + std::to_string(beta) + "]";
    auto k = h.poisson();
    const LocalFunctional& gb = h.gbar(beta, 0);
    for (int a = 1; a <= h.n(); ++a)
        for (int d = -1; d < h.d_max; ++d) {
            DiffPoly res = dx(partial(h.g(a, d + 1), {beta, 0})) - bracket_df(h.g(a, d), gb, k);
            r.add(pair_label(a, d), res.is_zero(), res.str());
        }
    return r;
}

Report string_check(const Hierarchy& h) {
    Report r;
    r.check = "string";
    for (int a = 1; a <= h.n(); ++a) {
        DiffPoly c = partial(h.g(a, -1), {1, 0}) -
                     DiffPoly::constant(h.n(), Coefficient(h.seed.eta[static_cast<size_t>(a - 1)][0]), h.trunc);
        r.add(pair_label(a, -1) + ":unit", c.is_zero(), c.str());
        for (int d = -1; d < h.d_max; ++d) {
            DiffPoly res = partial(h.g(a, d + 1), {1, 0}) - h.g(a, d);
            r.add(pair_label(a, d), res.is_zero(), res.str());
        }
    }
    return r;
}

Report certificate_check(const Hierarchy& h) {
    Report r;
    r.check = "exactness";
    LocalFunctional g11 = h.seed.g11.with_trunc(h.trunc);
    auto k = h.poisson();
    for (auto& [key, p] : h.primitives) {
        auto [a, d] = key;
        DiffPoly res = dx(p) - bracket_df(h.g(a, d - 1), g11, k);
        r.add(pair_label(a, d), res.is_zero(), res.str());
    }
    return r;
}

bool CommutativityMatrix::is_zero() const {
    for (auto& row : entries)
        for (auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

Report CommutativityMatrix::report() const {
    Report r;
    r.check = "commutativity";
    for (size_t i = 0; i < index.size(); ++i)
        for (size_t j = i + 1; j < index.size(); ++j) {
            auto& e = entries[i][j];
            r.add(pair_label(index[i].first, index[i].second) + "|" + pair_label(index[j].first, index[j].second), e.is_zero(),
                  e.str());
        }
    return r;
}

CommutativityMatrix commutativity_matrix(const Hierarchy& h, int p_max) {
    if (p_max > h.d_max) throw std::out_of_range("commutativity_matrix: p_max beyond the built hierarchy");
    CommutativityMatrix m;
    for (int a = 1; a <= h.n(); ++a)
        for (int p = -1; p <= p_max; ++p) m.index.push_back({a, p});
    const size_t n = m.index.size();
    m.entries.assign(n, std::vector<LocalFunctional>(n, LocalFunctional(h.n(), h.trunc)));
    std::vector<std::pair<size_t, size_t>> jobs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) jobs.push_back({i, j});
    auto k = h.poisson();
    parallel_for(jobs.size(), [&](size_t t) {
        auto [i, j] = jobs[t];
        auto& x = m.index[i];
        auto& y = m.index[j];
        m.entries[i][j] = bracket_ff(h.gbar(x.first, x.second), h.gbar(y.first, y.second), k);
    });
    for (auto [i, j] : jobs) m.entries[j][i] = -m.entries[i][j];
    return m;
}

DiffPoly q_derivative_scaled(const DiffPoly& f) {
    return f.map_coefficients([](const Coefficient& c) { return c.degree_scale(qid()); });
}

DiffPoly q_integrate_scaled(const DiffPoly& f) {
    return f.map_coefficients([](const Coefficient& c) {
        Coefficient out;
        for (int n = 1; n <= c.degree_in(qid()); ++n)
            out += c.coeff_of(qid(), n) * Coefficient::param(qid(), n) * frac(1, n);
        return out;
    });
}

DiffPoly q_zero_part(const DiffPoly& f) {
    return f.param_part(qid(), 0);
}

DiffPoly divisor_step(const Hierarchy& h, int gamma, int alpha, int d) {
    if (!h.seed.has_structure_constants()) throw std::invalid_argument("divisor_step: seed declares no structure constants");
    auto k = h.poisson();
    DiffPoly rhs = dx_inverse(bracket_df(h.g(alpha, d), h.gbar(gamma, 0), k));
    for (int mu = 1; mu <= h.n(); ++mu) {
        Coefficient c = h.seed.c_up(mu, alpha, gamma);
        if (!c.is_zero()) rhs -= c * h.g(mu, d);
    }
    return q_integrate_scaled(rhs);
}

Report hamiltonian_divisor_check(const Hierarchy& h, int gamma) {
    Report r;
    r.check = "divisor[gamma=" + std::to_string(gamma) + "]";
    if (!h.seed.has_structure_constants() || !h.seed.divisor_class || *h.seed.divisor_class != gamma) {
        r.applicable = false;
        r.note = "no degree-2 class declared";
        return r;
    }
    for (int a = 1; a <= h.n(); ++a)
        for (int d = 0; d <= h.d_max; ++d) {
            DiffPoly f = partial(h.g(a, d), {gamma, 0}) - q_derivative_scaled(h.g(a, d));
            for (int mu = 1; mu <= h.n(); ++mu) {
                Coefficient c = h.seed.c_up(mu, a, gamma);
                if (!c.is_zero()) f -= c * h.g(mu, d - 1);
            }
            LocalFunctional res = integrate(f);
            r.add(pair_label(a, d), res.is_zero(), res.str());
        }
    return r;
}

}  // namespace drham

#include "drham/seed.hpp"

#include "drham/fixtures.hpp"
#include "drham/parse.hpp"
#include "drham/series.hpp"
#include "json_util.hpp"

namespace drham {

namespace {

RationalMatrix antidiagonal(int n) {
    RationalMatrix m(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    for (int a = 0; a < n; ++a) m[static_cast<size_t>(a)][static_cast<size_t>(n - 1 - a)] = 1;
    return m;
}

TruncationConfig merged(const TruncationConfig& def, const std::optional<TruncationConfig>& over) {
    if (!over) return def;
    TruncationConfig t = def;
    if (over->eps_max < kUnbounded) t.eps_max = over->eps_max;
    if (over->q_max) t.q_max = over->q_max;
    if (over->u_deg_max) t.u_deg_max = over->u_deg_max;
    return t;
}

CftSeed kdv_seed(TruncationConfig t) {
    CftSeed s;
    s.name = "kdv";
    s.n = 1;
    s.eta = {{Rational(1)}};
    s.g11 = integrate(parse_diffpoly("u^3/6 + eps^2*u*u_2/24", 1, t));
    s.grading = {};
    s.trunc_default = t;
    return s;
}

// u^3/6 + sum_g eps^2g l^(g-1) |B_2g| / (2 (2g)!) u u_2g
CftSeed hodge_seed(TruncationConfig t) {
    if (t.eps_max >= kUnbounded) throw SeedError("hodge needs a finite eps bound");
    CftSeed s;
    s.name = "hodge";
    s.n = 1;
    s.eta = {{Rational(1)}};
    DiffPoly f = parse_diffpoly("u^3/6", 1, t);
    for (int g = 1; 2 * g <= t.eps_max; ++g) {
        Rational c = abs(bernoulli(2 * g)) / (2 * factorial(2 * g));
        f += DiffPoly::term(1, 2 * g, {{1, 0, 1}, {1, 2 * g, 1}}, Coefficient(c) * Coefficient::param("l", g - 1), t);
    }
    s.g11 = integrate(f);
    s.params = {{"l", t.eps_max / 2 - 1}};
    s.trunc_default = t;
    return s;
}

CftSeed rspin_seed(int r, TruncationConfig t) {
    CftSeed s;
    s.name = std::to_string(r) + "spin";
    s.n = r - 1;
    s.eta = antidiagonal(r - 1);
    s.g11 = integrate(parse_diffpoly(printed_g11(s.name), s.n, t));
    for (int a = 0; a <= r - 2; ++a) s.grading.push_back(r - a);
    s.trunc_default = t;
    return s;
}

CftSeed cp1_seed(TruncationConfig t) {
    if (t.eps_max >= kUnbounded || !t.q_max || !t.u_deg_max)
        throw SeedError("cp1 needs eps_max, q_max and u_deg_max");
    CftSeed s;
    s.name = "cp1";
    s.n = 2;
    s.eta = antidiagonal(2);
    Coefficient q = Coefficient::param("q");

    // e^{S(eps dx) u^w} - u^w
    DiffPoly w = DiffPoly::jet(2, 2, 0, t);
    DiffPoly f = exp_series(apply_series(PowerSeries::S(t.eps_max), w)) - w;

    DiffPoly g11 = parse_diffpoly("u1^2*u2/2", 2, t);
    for (int g = 1; 2 * g <= t.eps_max; ++g)
        g11 += DiffPoly::term(2, 2 * g, {{1, 0, 1}, {1, 2 * g, 1}}, Coefficient(bernoulli(2 * g) / factorial(2 * g)), t);
    g11 += q * (euler_D(f) - f * Rational(2));
    s.g11 = integrate(g11);

    s.known[{2, 0}] = integrate(parse_diffpoly("u1^2/2", 2, t) + q * f);

    s.c.assign(2, std::vector<std::vector<Coefficient>>(2, std::vector<Coefficient>(2)));
    s.c[0][0][1] = s.c[0][1][0] = s.c[1][0][0] = Coefficient(1);
    s.c[1][1][1] = q;
    s.params = {{"q", *t.q_max}};
    s.grading = {};
    s.trunc_default = t;
    s.divisor_class = 2;
    return s;
}

Rational matrix_entry(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw SeedError("matrix entries must be integers or \"p/q\" strings");
}

}  // namespace

HamiltonianOperator CftSeed::poisson(TruncationConfig trunc) const {
    return HamiltonianOperator::standard(eta_inverse(), trunc);
}

Coefficient CftSeed::c_up(int mu, int a, int b) const {
    if (c.empty()) return Coefficient();
    RationalMatrix inv = eta_inverse();
    Coefficient out;
    for (int nu = 1; nu <= n; ++nu) {
        const Rational& e = inv[static_cast<size_t>(mu - 1)][static_cast<size_t>(nu - 1)];
        if (e != 0) out += c[static_cast<size_t>(a - 1)][static_cast<size_t>(b - 1)][static_cast<size_t>(nu - 1)] * e;
    }
    return out;
}

std::vector<std::string> seed_names() {
    return {"kdv", "hodge", "3spin", "4spin", "cp1"};
}

CftSeed get_seed(std::string_view name, std::optional<TruncationConfig> trunc) {
    if (name == "kdv") return kdv_seed(merged({}, trunc));
    if (name == "hodge") {
        TruncationConfig def;
        def.eps_max = 6;
        return hodge_seed(merged(def, trunc));
    }
    if (name == "3spin") return rspin_seed(3, merged({}, trunc));
    if (name == "4spin") return rspin_seed(4, merged({}, trunc));
    if (name == "cp1") {
        if (trunc && (!trunc->q_max || !trunc->u_deg_max)) throw SeedError("cp1 needs q_max and u_deg_max");
        TruncationConfig def;
        def.eps_max = 4;
        def.q_max = 2;
        def.u_deg_max = 5;
        return cp1_seed(merged(def, trunc));
    }
    throw UnknownSeed("unknown seed '" + std::string(name) + "'");
}

CftSeed seed_from_json(std::string_view text, std::optional<TruncationConfig> trunc) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SeedError(std::string("seed file: ") + e.what());
    }
    try {
        CftSeed s;
        s.name = j.value("name", std::string("custom"));
        s.n = j.at("N").get<int>();
        TruncationConfig t;
        if (j.contains("trunc")) {
            auto& jt = j["trunc"];
            if (jt.contains("eps_max")) t.eps_max = jt["eps_max"].get<int>();
            if (jt.contains("q_max")) t.q_max = jt["q_max"].get<int>();
            if (jt.contains("u_deg_max")) t.u_deg_max = jt["u_deg_max"].get<int>();
        }
        t = merged(t, trunc);
        s.trunc_default = t;

        for (auto& row : j.at("eta")) {
            s.eta.emplace_back();
            for (auto& e : row) s.eta.back().push_back(matrix_entry(e));
        }
        if (static_cast<int>(s.eta.size()) != s.n) throw SeedError("eta must be N x N");
        for (auto& row : s.eta)
            if (static_cast<int>(row.size()) != s.n) throw SeedError("eta must be N x N");
        if (!is_symmetric(s.eta)) throw SeedError("eta must be symmetric");
        matrix_inverse(s.eta);

        auto& g = j.at("g11");
        if (g.is_string())
            s.g11 = integrate(parse_diffpoly(g.get<std::string>(), s.n, t));
        else
            s.g11 = integrate(diffpoly_from_json(g.contains("functional") ? g["functional"] : g, t));
        if (s.g11.nvars() != s.n) throw SeedError("g11 has the wrong number of variables");

        if (j.contains("c")) {
            s.c.assign(static_cast<size_t>(s.n), std::vector<std::vector<Coefficient>>(
                                                     static_cast<size_t>(s.n), std::vector<Coefficient>(static_cast<size_t>(s.n))));
            auto& jc = j["c"];
            for (int a = 0; a < s.n; ++a)
                for (int b = 0; b < s.n; ++b)
                    for (int c = 0; c < s.n; ++c) {
                        auto& e = jc.at(static_cast<size_t>(a)).at(static_cast<size_t>(b)).at(static_cast<size_t>(c));
                        s.c[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] =
                            e.is_string() ? parse_diffpoly(e.get<std::string>(), s.n).constant_term() : Coefficient(matrix_entry(e));
                    }
        }
        if (j.contains("params"))
            for (auto& p : j["params"]) s.params.push_back({p.at("name").get<std::string>(), p.value("max_deg", 0)});
        if (j.contains("grading")) s.grading = j["grading"].get<std::vector<int>>();
        if (j.contains("divisor_class")) s.divisor_class = j["divisor_class"].get<int>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw SeedError(std::string("seed file: ") + e.what());
    }
}

std::string seed_to_json(const CftSeed& s, int indent) {
    nlohmann::json j;
    j["name"] = s.name;
    j["N"] = s.n;
    j["eta"] = nlohmann::json::array();
    for (auto& row : s.eta) {
        nlohmann::json r = nlohmann::json::array();
        for (auto& e : row) r.push_back(e.get_den() == 1 ? nlohmann::json(e.get_num().get_si()) : nlohmann::json(to_string(e)));
        j["eta"].push_back(r);
    }
    j["g11"] = {{"functional", diffpoly_json(s.g11.repr())}};
    if (!s.c.empty()) {
        j["c"] = nlohmann::json::array();
        for (auto& m : s.c) {
            nlohmann::json jm = nlohmann::json::array();
            for (auto& row : m) {
                nlohmann::json jr = nlohmann::json::array();
                for (auto& e : row) jr.push_back(e.str());
                jm.push_back(jr);
            }
            j["c"].push_back(jm);
        }
    }
    if (!s.params.empty()) {
        j["params"] = nlohmann::json::array();
        for (auto& p : s.params) j["params"].push_back({{"name", p.name}, {"max_deg", p.max_deg}});
    }
    if (!s.grading.empty()) j["grading"] = s.grading;
    if (s.divisor_class) j["divisor_class"] = *s.divisor_class;
    return j.dump(indent);
}

Rational normalization_check(const CftSeed& s) {
    DiffPoly v = variational_derivative(s.g11, 1);
    return v.coeff(2, {{1, 2, 1}}).to_rational();
}

}  // namespace drham

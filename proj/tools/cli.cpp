#include "cli.hpp"

#include "drham/recursion.hpp"
#include "drham/seeds.hpp"
#include "drham/solutions.hpp"
#include "drham/toda.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace drham::cli {

namespace {

struct Options {
    RunConfig cfg;
    std::string format = "text";
    std::string suite;
    std::string what;
    std::string from;
    std::optional<int> p_max;
    int t_max = 2;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.cfg.seed, "seed name (kdv, hodge, 3spin, 4spin, cp1) or seed JSON file")
        ->capture_default_str();
    sub->add_option("--dmax", o.cfg.d_max, "highest descendant index")->capture_default_str();
    sub->add_option("--eps", o.cfg.eps_max, "eps truncation")->capture_default_str();
    sub->add_option("--qmax", o.cfg.q_max, "q truncation");
    sub->add_option("--udeg", o.cfg.u_deg_max, "u-degree truncation");
    sub->add_option("--format", o.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--out", o.cfg.out, "output file (default stdout)");
}

void validate(const RunConfig& c) {
    if (c.d_max < 0) throw ConfigError("--dmax must be >= 0");
    if (c.eps_max <= 0) throw ConfigError("--eps must be positive");
    if (c.q_max && *c.q_max <= 0) throw ConfigError("--qmax must be positive");
    if (c.u_deg_max && *c.u_deg_max <= 0) throw ConfigError("--udeg must be positive");
}

TruncationConfig truncation(const RunConfig& c) {
    TruncationConfig t;
    t.eps_max = c.eps_max;
    t.q_max = c.q_max;
    t.u_deg_max = c.u_deg_max;
    return t;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool is_file_seed(const std::string& s) {
    return s.ends_with(".json") || std::filesystem::is_regular_file(s);
}

CftSeed load_seed(const RunConfig& c) {
    if (is_file_seed(c.seed)) return seed_from_json(slurp(c.seed), truncation(c));
    return get_seed(c.seed, truncation(c));
}

std::string seed_name(const RunConfig& c) {
    if (is_file_seed(c.seed)) return seed_from_json(slurp(c.seed)).name;
    return c.seed;
}

Hierarchy build(const RunConfig& c, int d_max) {
    return build_hierarchy(load_seed(c), d_max, truncation(c));
}

Report riccati_report(const RunConfig& c, int p_max) {
    Report r;
    r.check = "riccati";
    auto h = build(c, p_max);
    auto g = riccati_kdv(p_max);
    for (int p = 0; p <= p_max; ++p) {
        auto diff = g[static_cast<size_t>(p)] - h.gbar(1, p);
        r.add("gbar[1][" + std::to_string(p) + "]", diff.is_zero(), diff.str());
    }
    return r;
}

Report normalization_report(const RunConfig& c) {
    auto s = load_seed(c);
    Rational got = normalization_check(s);
    Rational want(s.n, 12);
    want.canonicalize();
    Report r;
    r.check = "normalization";
    r.note = "eps^2 u^1_2 coefficient " + got.get_str() + ", N/12 = " + want.get_str();
    r.add("N/12", got == want, Rational(got - want).get_str());
    return r;
}

std::vector<Report> divisor_reports(const RunConfig& c, int t_max) {
    auto s = load_seed(c);
    if (!s.divisor_class) throw ConfigError("suite divisor needs a seed with a divisor class, '" + s.name + "' has none");
    auto h = build_hierarchy(s, c.d_max, truncation(c));
    std::vector<Report> out{hamiltonian_divisor_check(h, *s.divisor_class)};
    int need = required_u_degree(h, t_max);
    if (need == 0 || (h.trunc.u_deg_max && *h.trunc.u_deg_max >= need)) {
        out.push_back(verify_divisor_equation(expand_string_solution(h, t_max), s));
    } else {
        out.front().note = "string solution skipped: needs --udeg " + std::to_string(need) + " for --tmax " +
                           std::to_string(t_max);
    }
    return out;
}

void require_seed(const RunConfig& c, const std::string& want, const std::string& suite) {
    if (seed_name(c) != want) throw ConfigError("suite " + suite + " applies to seed " + want + " only");
}

std::vector<Report> run_suite(const Options& o) {
    const RunConfig& c = o.cfg;
    const std::string& s = o.suite;
    std::vector<Report> out;
    if (s == "commutativity") {
        auto h = build(c, c.d_max);
        out.push_back(commutativity_matrix(h, c.d_max).report());
    } else if (s == "string") {
        out.push_back(string_check(build(c, c.d_max)));
    } else if (s == "trr") {
        auto h = build(c, c.d_max);
        for (int b = 1; b <= h.n(); ++b) out.push_back(trr_check(h, b));
    } else if (s == "tau") {
        auto h = build(c, c.d_max);
        out.push_back(tau_symmetry_check(tau_densities(h.hamiltonians), h.poisson(), c.d_max - 1));
    } else if (s == "divisor") {
        out = divisor_reports(c, o.t_max);
    } else if (s == "toda") {
        require_seed(c, "cp1", s);
        for (int e : {2, 4, 6}) out.push_back(cp1_operator_check(e));
        TruncationConfig t;
        t.eps_max = 6;
        t.q_max = 1;
        t.u_deg_max = 6;
        out.push_back(toda_omega0_check(t));
        out.push_back(toda_degree_zero_check(3, t));
        out.push_back(toda_h11_check(6));
        out.push_back(harmonic_identity_check(10));
    } else if (s == "identities") {
        require_seed(c, "cp1", s);
        out.push_back(harmonic_identity_check(10));
        out.push_back(omega_identity_check(3, 4));
        out.push_back(omega_identity_check(2, 6));
        out.push_back(omega_r_recursion(4, 2));
    } else if (s == "riccati") {
        require_seed(c, "kdv", s);
        out.push_back(riccati_report(c, o.p_max.value_or(c.d_max)));
    } else if (s == "normalization") {
        out.push_back(normalization_report(c));
    }
    return out;
}

std::string render_reports(const Options& o, const std::vector<Report>& reports, bool ok) {
    if (o.cfg.format == Format::json) {
        nlohmann::json j;
        j["suite"] = o.suite;
        j["seed"] = seed_name(o.cfg);
        j["passed"] = ok;
        j["reports"] = nlohmann::json::array();
        for (auto& r : reports) j["reports"].push_back(nlohmann::json::parse(r.to_json()));
        return j.dump(2) + "\n";
    }
    std::string s;
    for (auto& r : reports) s += r.str();
    s += std::string(ok ? "PASS" : "FAIL") + " " + o.suite + "\n";
    return s;
}

Hierarchy load_artifact(const std::string& path) {
    if (!std::filesystem::is_regular_file(path)) throw MissingArtifact("no artifact at '" + path + "'");
    std::string text = slurp(path);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw MissingArtifact("artifact '" + path + "' is empty");
    Hierarchy h;
    try {
        h = hierarchy_from_json(text);
    } catch (const nlohmann::json::exception& e) {
        throw MissingArtifact("artifact '" + path + "' is not a hierarchy export: " + e.what());
    }
    if (h.densities.empty()) throw MissingArtifact("artifact '" + path + "' holds no densities");
    return h;
}

std::string export_hierarchy(const Hierarchy& h, const std::string& what, Format f) {
    if (f == Format::text) {
        if (what == "densities") return h.str();
        std::string s;
        for (auto& [k, g] : h.hamiltonians)
            s += "gbar[" + std::to_string(k.first) + "][" + std::to_string(k.second) + "] = " + g.str() + "\n";
        return s;
    }
    auto j = nlohmann::json::parse(h.to_json());
    j.erase(what == "densities" ? "hamiltonians" : "densities");
    return j.dump(2) + "\n";
}

std::string run_export(const Options& o) {
    if (o.what == "solution") {
        if (!o.from.empty()) throw ConfigError("export solution recomputes from --seed; --from is not supported");
        auto h = build(o.cfg, o.cfg.d_max);
        auto u = expand_string_solution(h, o.t_max);
        return o.cfg.format == Format::json ? u.to_json(2) + "\n" : u.str();
    }
    if (!o.from.empty()) return export_hierarchy(load_artifact(o.from), o.what, o.cfg.format);
    return export_hierarchy(build(o.cfg, o.cfg.d_max), o.what, o.cfg.format);
}

void emit(const RunConfig& c, const std::string& text, Outcome& res) {
    if (c.out.empty()) {
        res.out += text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + c.out + "'");
    f << text;
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
    Outcome res;
    Options o;
    CLI::App app{"Double ramification hierarchies: compute, verify, export", "drham"};
    app.require_subcommand(1);
    auto* compute = app.add_subcommand("compute", "build the hierarchy and write its densities");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    auto* exp = app.add_subcommand("export", "render densities, Hamiltonians or the string solution");
    for (auto* s : {compute, verify, exp}) add_common(s, o);
    verify
        ->add_option("--suite", o.suite, "suite")
        ->required()
        ->check(CLI::IsMember(
            {"commutativity", "string", "trr", "tau", "divisor", "toda", "identities", "riccati", "normalization"}));
    verify->add_option("--pmax", o.p_max, "top index for riccati (default --dmax)");
    verify->add_option("--tmax", o.t_max, "time degree of the string solution")->capture_default_str();
    exp->add_option("--what", o.what, "densities, hamiltonians or solution")
        ->required()
        ->check(CLI::IsMember({"densities", "hamiltonians", "solution"}));
    exp->add_option("--from", o.from, "hierarchy JSON written by compute --format json");
    exp->add_option("--tmax", o.t_max, "time degree of the string solution")->capture_default_str();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = app.exit(e, out, err);
        res.out = out.str();
        res.err = err.str();
        res.code = code == 0 ? kOk : kConfigError;
        return res;
    }

    try {
        o.cfg.format = o.format == "json" ? Format::json : Format::text;
        validate(o.cfg);
        if (o.t_max < 0) throw ConfigError("--tmax must be >= 0");
        if (o.p_max && *o.p_max < 0) throw ConfigError("--pmax must be >= 0");
        if (compute->parsed()) {
            auto h = build(o.cfg, o.cfg.d_max);
            emit(o.cfg, o.cfg.format == Format::json ? h.to_json(2) + "\n" : h.str(), res);
        } else if (verify->parsed()) {
            auto reports = run_suite(o);
            bool ok = std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); });
            emit(o.cfg, render_reports(o, reports, ok), res);
            res.code = ok ? kOk : kVerifyFailed;
        } else {
            emit(o.cfg, run_export(o), res);
        }
    } catch (const RecursionError& e) {
        res.code = kRecursionError;
        res.err = std::string("error: ") + e.what() + "\n";
    } catch (const OrderDependence& e) {
        res.code = kVerifyFailed;
        res.err = std::string("error: ") + e.what() + "\n";
    } catch (const MissingArtifact& e) {
        res.code = kConfigError;
        res.err = std::string("MissingArtifact: ") + e.what() + "\n";
    } catch (const std::invalid_argument& e) {
        // ConfigError, UnknownSeed, SeedError and bad seed files
        res.code = kConfigError;
        res.err = std::string("error: ") + e.what() + "\n";
    } catch (const nlohmann::json::exception& e) {
        res.code = kConfigError;
        res.err = std::string("error: bad JSON: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        res.code = kInternal;
        res.err = std::string("internal error: ") + e.what() + "\n";
    }
    return res;
}

}  // namespace drham::cli

#include "json_util.hpp"

#include <climits>

namespace drham {

namespace {

nlohmann::json integer_json(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

mpz_class integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw std::invalid_argument("expected an integer");
}

}  // namespace

nlohmann::json rational_json(const Rational& r) {
    return {{"num", integer_json(r.get_num())}, {"den", integer_json(r.get_den())}};
}

Rational rational_from_json(const nlohmann::json& j) {
    Rational r(integer_from_json(j.at("num")), integer_from_json(j.at("den")));
    r.canonicalize();
    return r;
}

nlohmann::json diffpoly_json(const DiffPoly& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [k, c] : f.terms()) {
        nlohmann::json jets = nlohmann::json::array();
        for (auto& fa : k.mono) jets.push_back({fa.alpha, fa.k, fa.exp});
        // one entry per parameter monomial, in name order
        std::vector<std::pair<std::map<std::string, int>, Rational>> parts;
        for (auto& [pm, r] : c.terms()) {
            std::map<std::string, int> named;
            for (auto& [id, e] : pm) named[param_name(id)] = e;
            parts.emplace_back(std::move(named), r);
        }
        std::sort(parts.begin(), parts.end(), [](auto& a, auto& b) { return a.first < b.first; });
        for (auto& [named, r] : parts) {
            nlohmann::json coeff = rational_json(r);
            coeff["params"] = nlohmann::json::object();
            for (auto& [n, e] : named) coeff["params"][n] = e;
            terms.push_back({{"eps", k.eps}, {"jets", jets}, {"coeff", coeff}});
        }
    }
    return {{"nvars", f.nvars()}, {"terms", terms}};
}

DiffPoly diffpoly_from_json(const nlohmann::json& j, TruncationConfig trunc) {
    DiffPoly f(j.at("nvars").get<int>(), trunc);
    for (auto& t : j.at("terms")) {
        Monomial m;
        for (auto& jet : t.at("jets")) m = mono_mul(m, {{jet.at(0).get<int>(), jet.at(1).get<int>(), jet.at(2).get<int>()}});
        auto& cj = t.at("coeff");
        Coefficient c(rational_from_json(cj));
        if (cj.contains("params"))
            for (auto& [name, e] : cj.at("params").items()) c = c * Coefficient::param(name, e.get<int>());
        f.add_term(t.value("eps", 0), m, c);
    }
    return f;
}

}  // namespace drham

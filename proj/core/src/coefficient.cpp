#include "drham/coefficient.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace drham {

std::string to_string(const Rational& r) {
    return r.get_str();
}

Rational parse_rational(std::string_view s) {
    Rational r;
    if (r.set_str(std::string(s), 10) != 0) throw std::invalid_argument("bad rational: " + std::string(s));
    r.canonicalize();
    return r;
}

namespace {

struct Registry {
    std::mutex mu;
    std::unordered_map<std::string, int> ids;
    std::deque<std::string> names;  // stable references
};

Registry& registry() {
    static Registry r;
    return r;
}

ParamMono mono_mul(const ParamMono& a, const ParamMono& b) {
    ParamMono out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

int param_id(std::string_view name) {
    auto& reg = registry();
    std::lock_guard lock(reg.mu);
    auto it = reg.ids.find(std::string(name));
    if (it != reg.ids.end()) return it->second;
    int id = static_cast<int>(reg.names.size());
    reg.names.emplace_back(name);
    reg.ids.emplace(std::string(name), id);
    return id;
}

const std::string& param_name(int id) {
    auto& reg = registry();
    std::lock_guard lock(reg.mu);
    return reg.names.at(static_cast<size_t>(id));
}

int param_degree(const ParamMono& m, int id) {
    for (auto& [p, e] : m)
        if (p == id) return e;
    return 0;
}

Coefficient::Coefficient(const Rational& r) {
    if (r != 0) terms_.emplace_back(ParamMono{}, r);
}

Coefficient Coefficient::param(std::string_view name, int exp) {
    return param(param_id(name), exp);
}

Coefficient Coefficient::param(int id, int exp) {
    Coefficient c;
    if (exp == 0)
        c.terms_.emplace_back(ParamMono{}, Rational(1));
    else
        c.terms_.emplace_back(ParamMono{{id, exp}}, Rational(1));
    return c;
}

bool Coefficient::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

Rational Coefficient::constant_term() const {
    for (auto& [m, r] : terms_)
        if (m.empty()) return r;
    return 0;
}

Rational Coefficient::to_rational() const {
    if (!is_constant()) throw std::domain_error("coefficient has parameters: " + str());
    return constant_term();
}

void Coefficient::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](auto& a, auto& b) { return a.first < b.first; });
    std::vector<std::pair<ParamMono, Rational>> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](auto& t) { return t.second == 0; }), out.end());
    terms_ = std::move(out);
}

Coefficient Coefficient::operator-() const {
    Coefficient c = *this;
    for (auto& t : c.terms_) t.second = -t.second;
    return c;
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    // merge of two sorted lists
    std::vector<std::pair<ParamMono, Rational>> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational s = terms_[i].second + o.terms_[j].second;
            if (s != 0) out.emplace_back(std::move(terms_[i].first), s);
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) {
    return *this += -o;
}

Coefficient& Coefficient::operator*=(const Rational& r) {
    if (r == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= r;
    return *this;
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    Coefficient c;
    if (a.is_zero() || b.is_zero()) return c;
    if (a.terms_.size() == 1 && a.terms_[0].first.empty()) return b * a.terms_[0].second;
    if (b.terms_.size() == 1 && b.terms_[0].first.empty()) return a * b.terms_[0].second;
    c.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (auto& [ma, ra] : a.terms_)
        for (auto& [mb, rb] : b.terms_) c.terms_.emplace_back(mono_mul(ma, mb), ra * rb);
    c.normalize();
    return c;
}

bool Coefficient::operator==(const Coefficient& o) const {
    return terms_ == o.terms_;
}

int Coefficient::degree_in(int id) const {
    int d = 0;
    for (auto& [m, r] : terms_) d = std::max(d, param_degree(m, id));
    return d;
}

int Coefficient::min_degree_in(int id) const {
    if (terms_.empty()) return 0;
    int d = param_degree(terms_[0].first, id);
    for (auto& [m, r] : terms_) d = std::min(d, param_degree(m, id));
    return d;
}

bool Coefficient::depends_on(int id) const {
    return degree_in(id) > 0;
}

bool Coefficient::truncate_param(int id, int max_deg) {
    size_t before = terms_.size();
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [&](auto& t) { return param_degree(t.first, id) > max_deg; }),
                 terms_.end());
    return terms_.size() != before;
}

Coefficient Coefficient::coeff_of(int id, int n) const {
    Coefficient c;
    for (auto& [m, r] : terms_) {
        if (param_degree(m, id) != n) continue;
        ParamMono rest;
        for (auto& f : m)
            if (f.first != id) rest.push_back(f);
        c.terms_.emplace_back(std::move(rest), r);
    }
    c.normalize();
    return c;
}

Coefficient Coefficient::degree_scale(int id) const {
    Coefficient c;
    for (auto& [m, r] : terms_) {
        int d = param_degree(m, id);
        if (d != 0) c.terms_.emplace_back(m, r * d);
    }
    return c;
}

Coefficient Coefficient::substitute(int id, const Coefficient& value) const {
    Coefficient out;
    std::map<int, Coefficient> powers;
    for (auto& [m, r] : terms_) {
        int d = param_degree(m, id);
        Coefficient rest;
        ParamMono rm;
        for (auto& f : m)
            if (f.first != id) rm.push_back(f);
        rest.terms_.emplace_back(std::move(rm), r);
        if (d == 0) {
            out += rest;
            continue;
        }
        auto it = powers.find(d);
        if (it == powers.end()) {
            Coefficient p(Rational(1));
            for (int i = 0; i < d; ++i) p = p * value;
            it = powers.emplace(d, std::move(p)).first;
        }
        out += rest * it->second;
    }
    return out;
}

std::pair<Coefficient, std::map<int, Coefficient>> Coefficient::linear_split(const std::vector<int>& unknowns) const {
    Coefficient base;
    std::map<int, Coefficient> lin;
    for (auto& [m, r] : terms_) {
        int hit = -1, count = 0;
        ParamMono rest;
        for (auto& f : m) {
            if (std::find(unknowns.begin(), unknowns.end(), f.first) != unknowns.end()) {
                hit = f.first;
                count += f.second;
            } else {
                rest.push_back(f);
            }
        }
        Coefficient t;
        t.terms_.emplace_back(std::move(rest), r);
        if (count == 0)
            base += t;
        else if (count == 1)
            lin[hit] += t;
        else
            throw std::domain_error("coefficient is nonlinear in the unknowns: " + str());
    }
    return {base, lin};
}

std::string Coefficient::str() const {
    if (terms_.empty()) return "0";
    // order by rendered parameter names so output does not depend on interning order
    std::vector<std::pair<std::vector<std::pair<std::string, int>>, Rational>> named;
    for (auto& [m, r] : terms_) {
        std::vector<std::pair<std::string, int>> n;
        for (auto& [id, e] : m) n.emplace_back(param_name(id), e);
        std::sort(n.begin(), n.end());
        named.emplace_back(std::move(n), r);
    }
    std::sort(named.begin(), named.end(), [](auto& a, auto& b) {
        int da = 0, db = 0;
        for (auto& f : a.first) da += f.second;
        for (auto& f : b.first) db += f.second;
        if (da != db) return da < db;
        return a.first < b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [n, r] : named) {
        Rational v = r;
        if (!first) {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        first = false;
        if (n.empty()) {
            os << to_string(v);
            continue;
        }
        if (v == -1)
            os << "-";
        else if (v != 1)
            os << to_string(v) << "*";
        for (size_t i = 0; i < n.size(); ++i) {
            if (i) os << "*";
            os << n[i].first;
            if (n[i].second != 1) os << "^" << n[i].second;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Coefficient& c) {
    return os << c.str();
}

}  // namespace drham

#include "drham/functionals.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace drham {

namespace {

// Descending derivative orders, with multiplicity; the normal form keeps
// monomials whose orders are lexicographically small.
std::vector<int> order_profile(const Monomial& m) {
    std::vector<int> p;
    for (auto& f : m)
        for (int i = 0; i < f.exp; ++i) p.push_back(f.k);
    std::sort(p.rbegin(), p.rend());
    return p;
}

bool pivot_before(const Monomial& a, const Monomial& b) {
    auto pa = order_profile(a), pb = order_profile(b);
    if (pa != pb) return pa > pb;
    return a > b;
}

void partitions(int count, int total, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (count == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int p = std::min(total, maxpart); p >= 0; --p) {
        if (p * count < total) break;
        cur.push_back(p);
        partitions(count - 1, total - p, p, cur, out);
        cur.pop_back();
    }
}

struct SliceData {
    std::vector<Monomial> basis;  // sorted by pivot order, highest first
    std::map<Monomial, int> col;
    std::vector<Monomial> prebasis;
    struct Row {
        std::map<int, Rational> entries;  // col -> value, pivot entry == 1
        std::map<int, Rational> combo;    // prebasis index -> value
    };
    std::map<int, Row> rows;  // keyed by pivot col
};

using SliceKey = std::pair<std::vector<int>, int>;

std::shared_ptr<const SliceData> build_slice(const std::vector<int>& alphas, int order) {
    auto data = std::make_shared<SliceData>();
    data->basis = slice_basis(alphas, order);
    std::sort(data->basis.begin(), data->basis.end(), pivot_before);
    for (size_t i = 0; i < data->basis.size(); ++i) data->col[data->basis[i]] = static_cast<int>(i);
    if (order == 0) return data;
    data->prebasis = slice_basis(alphas, order - 1);
    int nvars = alphas.empty() ? 1 : alphas.back();
    for (size_t j = 0; j < data->prebasis.size(); ++j) {
        SliceData::Row r;
        DiffPoly d = dx(DiffPoly::term(nvars, 0, data->prebasis[j], Coefficient(1)));
        for (auto& [k, c] : d.terms()) r.entries[data->col.at(k.mono)] = c.to_rational();
        r.combo[static_cast<int>(j)] = 1;
        // eliminate existing pivots
        for (auto& [p, row] : data->rows) {
            auto it = r.entries.find(p);
            if (it == r.entries.end()) continue;
            Rational f = it->second;
            for (auto& [c, v] : row.entries) {
                Rational& x = r.entries[c];
                x -= f * v;
            }
            for (auto& [c, v] : row.combo) r.combo[c] -= f * v;
            std::erase_if(r.entries, [](auto& e) { return e.second == 0; });
            std::erase_if(r.combo, [](auto& e) { return e.second == 0; });
        }
        if (r.entries.empty()) continue;
        int pivot = r.entries.begin()->first;
        Rational inv = 1 / r.entries.begin()->second;
        for (auto& [c, v] : r.entries) v *= inv;
        for (auto& [c, v] : r.combo) v *= inv;
        // back substitution keeps rows reduced
        for (auto& [p, row] : data->rows) {
            auto it = row.entries.find(pivot);
            if (it == row.entries.end()) continue;
            Rational f = it->second;
            for (auto& [c, v] : r.entries) row.entries[c] -= f * v;
            for (auto& [c, v] : r.combo) row.combo[c] -= f * v;
            std::erase_if(row.entries, [](auto& e) { return e.second == 0; });
            std::erase_if(row.combo, [](auto& e) { return e.second == 0; });
        }
        data->rows.emplace(pivot, std::move(r));
    }
    return data;
}

std::shared_ptr<const SliceData> slice(const std::vector<int>& alphas, int order) {
    static std::mutex mu;
    static std::map<SliceKey, std::shared_ptr<const SliceData>> cache;
    SliceKey key{alphas, order};
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto data = build_slice(alphas, order);
    std::lock_guard lock(mu);
    return cache.emplace(std::move(key), std::move(data)).first->second;
}

}  // namespace

std::vector<Monomial> slice_basis(const std::vector<int>& alphas, int order) {
    // group alphas
    std::vector<std::pair<int, int>> groups;
    for (int a : alphas) {
        if (!groups.empty() && groups.back().first == a)
            ++groups.back().second;
        else
            groups.emplace_back(a, 1);
    }
    std::vector<Monomial> out;
    std::function<void(size_t, int, Monomial&)> rec = [&](size_t g, int left, Monomial& cur) {
        if (g == groups.size()) {
            if (left == 0) out.push_back(cur);
            return;
        }
        auto [alpha, mult] = groups[g];
        for (int s = 0; s <= left; ++s) {
            if (g + 1 == groups.size() && s != left) continue;
            std::vector<std::vector<int>> parts;
            std::vector<int> tmp;
            partitions(mult, s, s, tmp, parts);
            for (auto& p : parts) {
                Monomial m = cur;
                Monomial add;
                for (int k : p) add = mono_mul(add, {{alpha, k, 1}});
                m = mono_mul(m, add);
                rec(g + 1, left - s, m);
            }
        }
    };
    Monomial start;
    rec(0, order, start);
    std::sort(out.begin(), out.end());
    return out;
}

DxSplit dx_split(const DiffPoly& f) {
    DxSplit out{f * Rational(0), f * Rational(0)};
    // slice -> column -> coefficient
    std::map<std::tuple<int, std::vector<int>, int>, std::map<Monomial, Coefficient>> slices;
    for (auto& [k, c] : f.terms()) slices[{k.eps, alpha_multiset(k.mono), diff_degree(k.mono)}][k.mono] = c;
    for (auto& [key, terms] : slices) {
        auto& [eps, alphas, order] = key;
        if (alphas.empty()) {
            for (auto& [m, c] : terms) out.remainder.add_term(eps, m, c);
            continue;
        }
        auto data = slice(alphas, order);
        std::map<int, Coefficient> vec;
        for (auto& [m, c] : terms) vec[data->col.at(m)] = c;
        std::map<int, Coefficient> prim;
        for (auto& [p, row] : data->rows) {
            auto it = vec.find(p);
            if (it == vec.end()) continue;
            Coefficient c = it->second;
            for (auto& [col, v] : row.entries) {
                Coefficient& x = vec[col];
                x -= c * v;
            }
            for (auto& [j, v] : row.combo) prim[j] += c * v;
        }
        for (auto& [col, c] : vec)
            if (!c.is_zero()) out.remainder.add_term(eps, data->basis[static_cast<size_t>(col)], c);
        for (auto& [j, c] : prim)
            if (!c.is_zero()) out.primitive.add_term(eps, data->prebasis[static_cast<size_t>(j)], c);
    }
    return out;
}

DiffPoly ibp_normal_form(const DiffPoly& f) {
    return dx_split(f).remainder;
}

LocalFunctional integrate(const DiffPoly& f) {
    LocalFunctional out(f.nvars(), f.trunc());
    out.repr_ = dx_split(f).remainder.without_constant();
    return out;
}

LocalFunctional LocalFunctional::operator-() const {
    LocalFunctional f = *this;
    f.repr_ = -repr_;
    return f;
}

LocalFunctional& LocalFunctional::operator+=(const LocalFunctional& o) {
    repr_ += o.repr_;
    return *this;
}

LocalFunctional& LocalFunctional::operator-=(const LocalFunctional& o) {
    repr_ -= o.repr_;
    return *this;
}

LocalFunctional operator*(const Coefficient& c, const LocalFunctional& f) {
    LocalFunctional out = f;
    out.repr_ *= c;
    return out;
}

LocalFunctional LocalFunctional::with_trunc(const TruncationConfig& t) const {
    return integrate(repr_.with_trunc(t));
}

std::string LocalFunctional::str() const {
    return "int(" + repr_.str() + ")";
}

std::string to_json(const LocalFunctional& f, int indent) {
    nlohmann::json j{{"functional", diffpoly_json(f.repr())}};
    return j.dump(indent);
}

bool equals(const LocalFunctional& a, const LocalFunctional& b) {
    if (a.nvars() != b.nvars()) throw DimensionMismatch("functionals of different dimension");
    for (int alpha = 1; alpha <= a.nvars(); ++alpha)
        if (variational_derivative(a.repr(), alpha) != variational_derivative(b.repr(), alpha)) return false;
    return true;
}

DiffPoly variational_derivative(const LocalFunctional& f, int alpha) {
    return variational_derivative(f.repr(), alpha);
}

DiffPoly dx_inverse(const DiffPoly& f) {
    DxSplit s = dx_split(f);
    if (!s.remainder.is_zero()) {
        std::string r = s.remainder.str();
        if (r.size() > 400) r = r.substr(0, 400) + "...";
        throw NotExact("not a total derivative; obstruction " + r);
    }
    return s.primitive;
}

bool is_exact(const DiffPoly& f) {
    if (!f.constant_term().is_zero()) return false;
    for (int a = 1; a <= f.nvars(); ++a)
        if (!variational_derivative(f, a).is_zero()) return false;
    return true;
}

DiffPoly d_shift_inverse(const DiffPoly& f, const Rational& c) {
    DiffPoly out = f * Rational(0);
    std::vector<Monomial> bad;
    for (auto& [k, v] : f.terms()) {
        Rational w = weight(k.mono) - c;
        if (w == 0) {
            bad.push_back(k.mono);
            continue;
        }
        out.add_term(k.eps, k.mono, v * (1 / w));
    }
    if (!bad.empty()) {
        std::string msg = "weight collision with " + to_string(c) + ":";
        for (auto& m : bad) msg += " " + DiffPoly::term(f.nvars(), 0, m, Coefficient(1)).str();
        throw WeightCollision(msg, bad);
    }
    return out;
}

}  // namespace drham

#include "drham/diffpoly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace drham {

namespace {

int q_id() {
    static const int id = param_id("q");
    return id;
}

int sat_add(int a, int b) {
    if (a >= kUnbounded || b >= kUnbounded) return kUnbounded;
    return std::min(kUnbounded, a + b);
}

std::optional<int> min_opt(const std::optional<int>& a, const std::optional<int>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

}  // namespace

TruncationConfig TruncationConfig::tighter(const TruncationConfig& o) const {
    TruncationConfig t;
    t.eps_max = std::min(eps_max, o.eps_max);
    t.q_max = min_opt(q_max, o.q_max);
    t.u_deg_max = min_opt(u_deg_max, o.u_deg_max);
    return t;
}

std::string TruncationConfig::str() const {
    std::ostringstream os;
    os << "eps<=" << (eps_max >= kUnbounded ? std::string("inf") : std::to_string(eps_max));
    if (q_max) os << " q<=" << *q_max;
    if (u_deg_max) os << " udeg<=" << *u_deg_max;
    return os.str();
}

int u_degree(const Monomial& m) {
    int d = 0;
    for (auto& f : m) d += f.exp;
    return d;
}

int diff_degree(const Monomial& m) {
    int d = 0;
    for (auto& f : m) d += f.k * f.exp;
    return d;
}

int weight(const Monomial& m) {
    int d = 0;
    for (auto& f : m) d += (f.k + 1) * f.exp;
    return d;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    auto key = [](const Factor& f) { return std::pair(f.alpha, f.k); };
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && key(a[i]) < key(b[j]))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || key(b[j]) < key(a[i])) {
            out.push_back(b[j++]);
        } else {
            out.push_back({a[i].alpha, a[i].k, a[i].exp + b[j].exp});
            ++i;
            ++j;
        }
    }
    return out;
}

int mono_exp(const Monomial& m, JetVar v) {
    for (auto& f : m)
        if (f.alpha == v.alpha && f.k == v.k) return f.exp;
    return 0;
}

std::vector<int> alpha_multiset(const Monomial& m) {
    std::vector<int> out;
    for (auto& f : m)
        for (int i = 0; i < f.exp; ++i) out.push_back(f.alpha);
    return out;
}

DiffPoly::DiffPoly(int nvars, TruncationConfig trunc) : nvars_(nvars), trunc_(trunc) {
    if (nvars < 1) throw DimensionMismatch("nvars must be positive");
}

DiffPoly DiffPoly::constant(int nvars, const Coefficient& c, TruncationConfig trunc) {
    DiffPoly f(nvars, trunc);
    f.add_term(0, {}, c);
    return f;
}

DiffPoly DiffPoly::jet(int nvars, int alpha, int k, TruncationConfig trunc) {
    DiffPoly f(nvars, trunc);
    f.add_term(0, {{alpha, k, 1}}, Coefficient(1));
    return f;
}

DiffPoly DiffPoly::term(int nvars, int eps, Monomial m, const Coefficient& c, TruncationConfig trunc) {
    DiffPoly f(nvars, trunc);
    f.add_term(eps, m, c);
    return f;
}

int DiffPoly::u_prec() const {
    return std::min(u_prec_, trunc_.u_deg_max.value_or(kUnbounded));
}

void DiffPoly::add_term(int eps, const Monomial& m, const Coefficient& c) {
    if (c.is_zero()) return;
    for (auto& f : m) {
        if (f.alpha < 1 || f.alpha > nvars_)
            throw DimensionMismatch("jet index " + std::to_string(f.alpha) + " outside 1.." + std::to_string(nvars_));
        if (f.k < 0 || f.exp <= 0) throw std::invalid_argument("bad monomial factor");
    }
    if (eps < 0) throw std::invalid_argument("negative eps power");
    if (eps > trunc_.eps_max || u_degree(m) > u_prec()) {
        truncated_ = true;
        return;
    }
    Coefficient cc = c;
    if (trunc_.q_max && cc.truncate_param(q_id(), *trunc_.q_max)) {
        truncated_ = true;
        if (cc.is_zero()) return;
    }
    TermKey key(eps, m);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), std::move(cc));
    } else {
        it->second += cc;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Coefficient DiffPoly::coeff(int eps, const Monomial& m) const {
    auto it = terms_.find(TermKey(eps, m));
    return it == terms_.end() ? Coefficient() : it->second;
}

void DiffPoly::prune() {
    int up = u_prec();
    for (auto it = terms_.begin(); it != terms_.end();) {
        bool drop = it->first.eps > trunc_.eps_max || it->first.udeg > up;
        if (!drop && trunc_.q_max && it->second.truncate_param(q_id(), *trunc_.q_max)) {
            truncated_ = true;
            drop = it->second.is_zero();
        }
        if (drop) {
            truncated_ = true;
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

void DiffPoly::set_u_prec(int p) {
    u_prec_ = std::min(u_prec_, p);
    prune();
}

DiffPoly DiffPoly::with_trunc(const TruncationConfig& t) const {
    DiffPoly f = *this;
    f.trunc_ = trunc_.tighter(t);
    f.prune();
    return f;
}

DiffPoly DiffPoly::as_exact() const {
    DiffPoly f = *this;
    f.trunc_ = {};
    f.u_prec_ = kUnbounded;
    f.truncated_ = false;
    return f;
}

DiffPoly DiffPoly::times_eps(int n) const {
    DiffPoly f(nvars_, trunc_);
    f.u_prec_ = u_prec_;
    f.truncated_ = truncated_;
    for (auto& [k, c] : terms_) f.add_term(k.eps + n, k.mono, c);
    return f;
}

DiffPoly DiffPoly::eps_part(int e) const {
    DiffPoly f(nvars_, trunc_);
    f.u_prec_ = u_prec_;
    f.truncated_ = truncated_;
    for (auto& [k, c] : terms_)
        if (k.eps == e) f.terms_.emplace(k, c);
    return f;
}

DiffPoly DiffPoly::param_part(int id, int n) const {
    DiffPoly f(nvars_, trunc_);
    f.u_prec_ = u_prec_;
    f.truncated_ = truncated_;
    for (auto& [k, c] : terms_) {
        Coefficient p = c.coeff_of(id, n);
        if (!p.is_zero()) f.terms_.emplace(k, std::move(p));
    }
    return f;
}

DiffPoly DiffPoly::without_constant() const {
    DiffPoly f = *this;
    f.terms_.erase(TermKey(0, {}));
    return f;
}

int DiffPoly::min_udeg() const {
    if (terms_.empty()) return sat_add(u_prec(), 1);
    int d = kUnbounded;
    for (auto& [k, c] : terms_) d = std::min(d, k.udeg);
    return d;
}

int DiffPoly::max_eps() const {
    int e = -1;
    for (auto& [k, c] : terms_) e = std::max(e, k.eps);
    return e;
}

bool DiffPoly::is_homogeneous(int degree) const {
    for (auto& [k, c] : terms_)
        if (diff_degree(k.mono) - k.eps != degree) return false;
    return true;
}

void DiffPoly::check_same(const DiffPoly& o) const {
    if (nvars_ != o.nvars_)
        throw DimensionMismatch("dimension mismatch: " + std::to_string(nvars_) + " vs " + std::to_string(o.nvars_));
}

void DiffPoly::merge_meta(const DiffPoly& o) {
    trunc_ = trunc_.tighter(o.trunc_);
    u_prec_ = std::min(u_prec_, o.u_prec_);
    truncated_ = truncated_ || o.truncated_;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly f = *this;
    for (auto& [k, c] : f.terms_) c = -c;
    return f;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    check_same(o);
    merge_meta(o);
    prune();
    for (auto& [k, c] : o.terms_) {
        if (k.eps > trunc_.eps_max || k.udeg > u_prec()) {
            truncated_ = true;
            continue;
        }
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            Coefficient cc = c;
            if (trunc_.q_max && cc.truncate_param(q_id(), *trunc_.q_max)) truncated_ = true;
            if (!cc.is_zero()) terms_.emplace(k, std::move(cc));
        } else {
            it->second += c;
            if (trunc_.q_max && it->second.truncate_param(q_id(), *trunc_.q_max)) truncated_ = true;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    return *this += -o;
}

DiffPoly& DiffPoly::operator*=(const Coefficient& c) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second = it->second * c;
        if (trunc_.q_max && it->second.truncate_param(q_id(), *trunc_.q_max)) truncated_ = true;
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    a.check_same(b);
    DiffPoly out(a.nvars_, a.trunc_.tighter(b.trunc_));
    out.truncated_ = a.truncated_ || b.truncated_;
    int prec = std::min(sat_add(a.u_prec(), b.min_udeg()), sat_add(b.u_prec(), a.min_udeg()));
    out.u_prec_ = prec;
    prec = out.u_prec();
    int emax = out.trunc_.eps_max;
    for (auto& [ka, ca] : a.terms_) {
        for (auto& [kb, cb] : b.terms_) {
            if (ka.eps + kb.eps > emax || ka.udeg + kb.udeg > prec) {
                out.truncated_ = true;
                continue;
            }
            TermKey k(ka.eps + kb.eps, mono_mul(ka.mono, kb.mono));
            auto it = out.terms_.find(k);
            if (it == out.terms_.end())
                out.terms_.emplace(std::move(k), ca * cb);
            else
                it->second += ca * cb;
        }
    }
    out.prune();
    for (auto it = out.terms_.begin(); it != out.terms_.end();) {
        if (it->second.is_zero())
            it = out.terms_.erase(it);
        else
            ++it;
    }
    return out;
}

DiffPoly DiffPoly::map_coefficients(const std::function<Coefficient(const Coefficient&)>& f) const {
    DiffPoly out(nvars_, trunc_);
    out.u_prec_ = u_prec_;
    out.truncated_ = truncated_;
    for (auto& [k, c] : terms_) out.add_term(k.eps, k.mono, f(c));
    return out;
}

std::string DiffPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [k, c] : terms_) {
        std::string body;
        auto append = [&](const std::string& s) {
            if (!body.empty()) body += "*";
            body += s;
        };
        if (k.eps == 1)
            append("eps");
        else if (k.eps > 1)
            append("eps^" + std::to_string(k.eps));
        for (auto& f : k.mono) {
            std::string j = "u^{" + std::to_string(f.alpha) + "}_{" + std::to_string(f.k) + "}";
            if (f.exp > 1) j += "^" + std::to_string(f.exp);
            append(j);
        }
        bool neg = false;
        std::string cs;
        if (c.is_constant()) {
            Rational r = c.to_rational();
            neg = r < 0;
            if (neg) r = -r;
            if (r != 1 || body.empty()) cs = to_string(r);
        } else {
            cs = "(" + c.str() + ")";
        }
        std::string piece = cs;
        if (!cs.empty() && !body.empty()) piece += "*";
        piece += body;
        if (first)
            out = (neg ? "-" : "") + piece;
        else
            out += (neg ? " - " : " + ") + piece;
        first = false;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const DiffPoly& f) {
    return os << f.str();
}

DiffPoly pow(const DiffPoly& f, int n) {
    DiffPoly r = DiffPoly::constant(f.nvars(), Coefficient(1), f.trunc());
    for (int i = 0; i < n; ++i) r = r * f;
    return r;
}

DiffPoly dx(const DiffPoly& f, int times) {
    if (times <= 0) return f;
    DiffPoly out = f * Rational(0);
    for (auto& [k, c] : f.terms()) {
        for (size_t i = 0; i < k.mono.size(); ++i) {
            const Factor& fi = k.mono[i];
            Monomial m = k.mono;
            if (fi.exp == 1)
                m.erase(m.begin() + static_cast<long>(i));
            else
                m[i].exp -= 1;
            m = mono_mul(m, {{fi.alpha, fi.k + 1, 1}});
            out.add_term(k.eps, m, c * Rational(fi.exp));
        }
    }
    return dx(out, times - 1);
}

DiffPoly partial(const DiffPoly& f, JetVar v) {
    DiffPoly out = f * Rational(0);
    if (f.u_prec() < kUnbounded) out.set_u_prec(f.u_prec() - 1);
    for (auto& [k, c] : f.terms()) {
        int e = mono_exp(k.mono, v);
        if (e == 0) continue;
        Monomial m;
        for (auto& fa : k.mono) {
            if (fa.alpha == v.alpha && fa.k == v.k) {
                if (fa.exp > 1) m.push_back({fa.alpha, fa.k, fa.exp - 1});
            } else {
                m.push_back(fa);
            }
        }
        out.add_term(k.eps, m, c * Rational(e));
    }
    return out;
}

DiffPoly euler_D(const DiffPoly& f) {
    DiffPoly out = f * Rational(0);
    for (auto& [k, c] : f.terms()) out.add_term(k.eps, k.mono, c * Rational(weight(k.mono)));
    return out;
}

DiffPoly variational_derivative(const DiffPoly& f, int alpha) {
    if (alpha < 1 || alpha > f.nvars()) throw DimensionMismatch("variational derivative index out of range");
    int kmax = -1;
    for (auto& [k, c] : f.terms())
        for (auto& fa : k.mono)
            if (fa.alpha == alpha) kmax = std::max(kmax, fa.k);
    DiffPoly acc = partial(f, {alpha, std::max(kmax, 0)}) * Rational(0);
    // P_0 - dx(P_1 - dx(P_2 - ...))
    for (int i = kmax; i >= 0; --i) acc = partial(f, {alpha, i}) - dx(acc);
    return acc;
}

void check_miura_shape(const std::vector<DiffPoly>& images) {
    for (size_t a = 0; a < images.size(); ++a) {
        const DiffPoly& img = images[a];
        int alpha = static_cast<int>(a) + 1;
        for (auto& [k, c] : img.terms()) {
            if (k.eps == 0) {
                bool ident = k.mono.size() == 1 && k.mono[0].alpha == alpha && k.mono[0].k == 0 && k.mono[0].exp == 1;
                if (!ident || c != Coefficient(1))
                    throw MiuraShapeError("Miura map component " + std::to_string(alpha) +
                                          " has a non-identity eps^0 part: " + img.eps_part(0).str());
            } else if (diff_degree(k.mono) != k.eps) {
                throw MiuraShapeError("Miura map component " + std::to_string(alpha) +
                                      " has an ungraded term at eps^" + std::to_string(k.eps));
            }
        }
        if (img.coeff(0, {{alpha, 0, 1}}) != Coefficient(1))
            throw MiuraShapeError("Miura map component " + std::to_string(alpha) + " lacks the identity term");
    }
}

DiffPoly substitute(const DiffPoly& f, const std::vector<DiffPoly>& images, bool check_shape) {
    if (static_cast<int>(images.size()) != f.nvars())
        throw DimensionMismatch("substitution needs one image per variable");
    if (check_shape) check_miura_shape(images);
    int n = images.front().nvars();
    TruncationConfig t = f.trunc();
    for (auto& img : images) t = t.tighter(img.trunc());
    std::vector<std::vector<DiffPoly>> jets(images.size());
    auto jet = [&](int alpha, int k) -> const DiffPoly& {
        auto& v = jets[static_cast<size_t>(alpha - 1)];
        if (v.empty()) v.push_back(images[static_cast<size_t>(alpha - 1)].with_trunc(t));
        while (static_cast<int>(v.size()) <= k) v.push_back(dx(v.back()));
        return v[static_cast<size_t>(k)];
    };
    DiffPoly out(n, t);
    if (f.u_prec() < kUnbounded) out.set_u_prec(f.u_prec());
    for (auto& [k, c] : f.terms()) {
        DiffPoly term = DiffPoly::term(n, k.eps, {}, c, t);
        for (auto& fa : k.mono)
            for (int e = 0; e < fa.exp; ++e) term = term * jet(fa.alpha, fa.k);
        out += term;
    }
    if (f.truncated()) out.mark_truncated();
    return out;
}

DiffPoly exp_series(const DiffPoly& f) {
    if (!f.trunc().u_deg_max) throw std::invalid_argument("exp_series requires u_deg_max");
    if (!f.constant_term().is_zero()) throw std::invalid_argument("exp_series argument has a constant term");
    DiffPoly out = DiffPoly::constant(f.nvars(), Coefficient(1), f.trunc());
    DiffPoly p = out;
    for (int m = 1; m <= *f.trunc().u_deg_max; ++m) {
        p = p * f * frac(1, m);
        if (p.is_zero()) break;
        out += p;
    }
    if (f.u_prec() < kUnbounded) out.set_u_prec(f.u_prec());
    return out;
}

}  // namespace drham

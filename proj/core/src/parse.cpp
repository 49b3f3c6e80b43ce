#include "drham/parse.hpp"

#include "json_util.hpp"

#include <cctype>

namespace drham {

namespace {

class Parser {
public:
    Parser(std::string_view s, int n, TruncationConfig t) : s_(s), n_(n), t_(t) {}

    DiffPoly run() {
        DiffPoly f = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stoi(std::string(s_.substr(start, pos_ - start)));
    }

    int braced_integer() {
        if (eat('{')) {
            int v = integer();
            if (!eat('}')) fail("expected }");
            return v;
        }
        return integer();
    }

    DiffPoly expr() {
        DiffPoly f = term();
        for (;;) {
            if (eat('+'))
                f += term();
            else if (eat('-'))
                f -= term();
            else
                return f;
        }
    }

    DiffPoly term() {
        DiffPoly f = unary();
        for (;;) {
            if (eat('*')) {
                f = f * unary();
            } else if (eat('/')) {
                DiffPoly d = unary();
                Coefficient c = d.constant_term();
                if (d.size() != 1 || !c.is_constant() || c.is_zero()) fail("division by a non-constant");
                f = f * (1 / c.to_rational());
            } else {
                return f;
            }
        }
    }

    DiffPoly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    DiffPoly power() {
        DiffPoly base = atom();
        if (eat('^')) return pow(base, braced_integer());
        return base;
    }

    DiffPoly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            DiffPoly f = expr();
            if (!eat(')')) fail("expected )");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Rational r = parse_rational(s_.substr(start, pos_ - start));
            return DiffPoly::constant(n_, Coefficient(r), t_);
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
        size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string id(s_.substr(start, pos_ - start));
        if (id == "eps") return DiffPoly::term(n_, 1, {}, Coefficient(1), t_);
        bool jetlike = (id[0] == 'u' || id[0] == 'v' || id[0] == 'w');
        for (size_t i = 1; jetlike && i < id.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(id[i]))) jetlike = false;
        if (!jetlike) return DiffPoly::constant(n_, Coefficient::param(id), t_);
        int alpha = 1, k = 0;
        if (id.size() > 1) {
            alpha = std::stoi(id.substr(1));
        } else if (pos_ + 1 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == '{') {
            ++pos_;
            alpha = braced_integer();
        } else if (n_ != 1) {
            fail("bare jet name needs an index when nvars > 1");
        }
        if (pos_ < s_.size() && s_[pos_] == '_') {
            ++pos_;
            k = braced_integer();
        }
        if (alpha < 1 || alpha > n_) fail("jet index out of range");
        return DiffPoly::jet(n_, alpha, k, t_);
    }

    std::string_view s_;
    size_t pos_ = 0;
    int n_;
    TruncationConfig t_;
};

}  // namespace

DiffPoly parse_diffpoly(std::string_view text, int nvars, TruncationConfig trunc) {
    return Parser(text, nvars, trunc).run();
}

std::string to_json(const DiffPoly& f, int indent) {
    return diffpoly_json(f).dump(indent);
}

DiffPoly diffpoly_from_json(std::string_view text, TruncationConfig trunc) {
    return diffpoly_from_json(nlohmann::json::parse(text), trunc);
}

}  // namespace drham

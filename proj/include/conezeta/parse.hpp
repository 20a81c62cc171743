#ifndef CONEZETA_PARSE_HPP
#define CONEZETA_PARSE_HPP

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>

#include "laurent_poly.hpp"

namespace conezeta {

/// A class in the Grothendieck ring as written in data files: a Laurent
/// polynomial in L, optionally times one opaque class token such as [E].
struct ClassExpr {
    LaurentPoly coeff;
    std::string symbol;

    friend bool operator==(const ClassExpr&, const ClassExpr&) = default;

    std::string to_string() const
    {
        if (symbol.empty()) {
            return coeff.to_string();
        }
        if (coeff == LaurentPoly(1)) {
            return "[" + symbol + "]";
        }
        return "[" + symbol + "]*(" + coeff.to_string() + ")";
    }
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Recursive-descent parser for sums and products of rationals, L, powers
/// with integer exponents, parentheses and [name] tokens.
class ClassParser {
public:
    explicit ClassParser(const std::string& text) : s_(text) {}

    ClassExpr parse()
    {
        Value v = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        ClassExpr out;
        for (const auto& [sym, c] : v) {
            if (c.is_zero()) {
                continue;
            }
            if (!sym.empty() && !out.symbol.empty()) {
                fail("more than one class token");
            }
            if (sym.empty()) {
                if (!out.symbol.empty() && !c.is_zero()) {
                    fail("a class token cannot be added to a polynomial");
                }
                out.coeff = c;
            } else {
                if (!out.coeff.is_zero()) {
                    fail("a class token cannot be added to a polynomial");
                }
                out.symbol = sym;
                out.coeff = c;
            }
        }
        return out;
    }

private:
    using Value = std::map<std::string, LaurentPoly>;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("cannot parse class '" + s_ + "': " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static Value add(Value a, const Value& b, int sign)
    {
        for (const auto& [k, v] : b) {
            a[k] += sign > 0 ? v : -v;
        }
        return a;
    }

    Value mul(const Value& a, const Value& b) const
    {
        Value r;
        for (const auto& [ka, va] : a) {
            for (const auto& [kb, vb] : b) {
                if (va.is_zero() || vb.is_zero()) {
                    continue;
                }
                if (!ka.empty() && !kb.empty()) {
                    fail("product of class tokens");
                }
                r[ka.empty() ? kb : ka] += va * vb;
            }
        }
        return r;
    }

    Value expr()
    {
        Value v;
        int sign = 1;
        if (eat('-')) {
            sign = -1;
        } else {
            eat('+');
        }
        v = add(v, term(), sign);
        for (;;) {
            if (eat('+')) {
                v = add(v, term(), 1);
            } else if (eat('-')) {
                v = add(v, term(), -1);
            } else {
                return v;
            }
        }
    }

    Value term()
    {
        Value v = power();
        for (;;) {
            if (eat('*')) {
                v = mul(v, power());
            } else if (eat('/')) {
                skip();
                const Rational d = number();
                if (d == 0) {
                    fail("division by zero");
                }
                Value inv{{"", LaurentPoly(1 / d)}};
                v = mul(v, inv);
            } else {
                return v;
            }
        }
    }

    long exponent()
    {
        skip();
        bool paren = eat('(');
        skip();
        bool negative = false;
        if (eat('-')) {
            negative = true;
        }
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an integer exponent");
        }
        long e = std::stol(s_.substr(start, pos_ - start));
        if (paren && !eat(')')) {
            fail("expected ')'");
        }
        return negative ? -e : e;
    }

    Value power()
    {
        Value base = primary();
        if (!eat('^')) {
            return base;
        }
        const long e = exponent();
        if (base.size() == 1 && base.begin()->first.empty()) {
            const LaurentPoly& b = base.begin()->second;
            if (e >= 0) {
                return {{"", b.pow(static_cast<unsigned>(e))}};
            }
            if (!b.is_monomial()) {
                fail("negative power of a non-monomial");
            }
            const auto& [be, bc] = *b.terms().begin();
            return {{"", LaurentPoly::monomial(rational_pow(bc, e), static_cast<int>(be * e))}};
        }
        if (e == 1) {
            return base;
        }
        fail("power of a class token");
    }

    Rational number()
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a number");
        }
        return parse_rational(s_.substr(start, pos_ - start));
    }

    Value primary()
    {
        skip();
        if (pos_ >= s_.size()) {
            fail("unexpected end of input");
        }
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return v;
        }
        if (c == '[') {
            ++pos_;
            const std::size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] != ']') {
                ++pos_;
            }
            if (pos_ == s_.size() || start == pos_) {
                fail("malformed class token");
            }
            std::string name = s_.substr(start, pos_ - start);
            ++pos_;
            return {{name, LaurentPoly(1)}};
        }
        if (c == 'L') {
            ++pos_;
            return {{"", LaurentPoly::L(1)}};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return {{"", LaurentPoly(number())}};
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline ClassExpr parse_class(const std::string& text)
{
    return detail::ClassParser(text).parse();
}

inline LaurentPoly parse_laurent(const std::string& text)
{
    ClassExpr c = parse_class(text);
    if (!c.symbol.empty()) {
        throw ParseError("expected a Laurent polynomial, found class token in '" + text + "'");
    }
    return c.coeff;
}

} // namespace conezeta

#endif // CONEZETA_PARSE_HPP

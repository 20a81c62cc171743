#ifndef CONEZETA_LAURENT_POLY_HPP
#define CONEZETA_LAURENT_POLY_HPP

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "rational.hpp"

namespace conezeta {

/// Laurent polynomial in the symbol L with exact rational coefficients.
///
/// Stored sparsely as exponent -> coefficient. No stored coefficient is zero,
/// so structural equality is value equality.
class LaurentPoly {
public:
    using Terms = std::map<int, Rational>;

    LaurentPoly() = default;
    LaurentPoly(const Rational& c) { add_term(0, c); }
    LaurentPoly(long c) : LaurentPoly(Rational(c)) {}

    static LaurentPoly monomial(const Rational& c, int exponent)
    {
        LaurentPoly p;
        p.add_term(exponent, c);
        return p;
    }

    /// L^exponent
    static LaurentPoly L(int exponent = 1) { return monomial(Rational(1), exponent); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
    bool is_monomial() const { return terms_.size() == 1; }

    int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    Rational coefficient(int exponent) const
    {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(int exponent, const Rational& c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.emplace(exponent, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    Rational evaluate(const Rational& at) const
    {
        Rational s = 0;
        for (const auto& [e, c] : terms_) {
            s += c * rational_pow(at, e);
        }
        return s;
    }

    Rational at_one() const
    {
        Rational s = 0;
        for (const auto& [e, c] : terms_) {
            s += c;
        }
        return s;
    }

    /// this * L^k
    LaurentPoly shifted(int k) const
    {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) {
            r.terms_.emplace(e + k, c);
        }
        return r;
    }

    /// Substitutes L -> L^-1.
    LaurentPoly inverted() const
    {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) {
            r.terms_.emplace(-e, c);
        }
        return r;
    }

    LaurentPoly operator-() const
    {
        LaurentPoly r = *this;
        for (auto& [e, c] : r.terms_) {
            c = -c;
        }
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_) {
            add_term(e, -c);
        }
        return *this;
    }

    LaurentPoly& operator*=(const LaurentPoly& o)
    {
        *this = *this * o;
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                r.add_term(ea + eb, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    LaurentPoly pow(unsigned k) const
    {
        LaurentPoly result(1);
        LaurentPoly base = *this;
        while (k != 0) {
            if (k & 1U) {
                result *= base;
            }
            k >>= 1;
            if (k != 0) {
                base *= base;
            }
        }
        return result;
    }

    /// Exact quotient this / d in Q[L, L^-1], or nullopt if d does not divide.
    std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const
    {
        if (d.is_zero()) {
            throw std::domain_error("LaurentPoly division by zero");
        }
        if (is_zero()) {
            return LaurentPoly();
        }
        // Strip the unit L^k parts; the remaining polynomials have nonzero constant term.
        const int shift = min_exponent() - d.min_exponent();
        std::map<int, Rational> rem;
        for (const auto& [e, c] : terms_) {
            rem.emplace(e - min_exponent(), c);
        }
        const int ddeg = d.max_exponent() - d.min_exponent();
        const Rational dlead = d.terms_.rbegin()->second;
        LaurentPoly q;
        while (!rem.empty() && rem.rbegin()->first >= ddeg) {
            const int top = rem.rbegin()->first;
            const Rational factor = rem.rbegin()->second / dlead;
            const int qe = top - ddeg;
            q.add_term(qe + shift, factor);
            for (const auto& [e, c] : d.terms_) {
                const int pe = qe + (e - d.min_exponent());
                auto [it, inserted] = rem.emplace(pe, -factor * c);
                if (!inserted) {
                    it->second -= factor * c;
                }
                if (it->second == 0) {
                    rem.erase(it);
                }
            }
        }
        if (!rem.empty()) {
            return std::nullopt;
        }
        return q;
    }

    /// Canonical text: descending exponents, e.g. "L^3 - 3*L^2 + 3*L - 1".
    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const int e = it->first;
            Rational c = it->second;
            const bool negative = c < 0;
            if (first) {
                if (negative) {
                    os << "-";
                }
            } else {
                os << (negative ? " - " : " + ");
            }
            if (negative) {
                c = -c;
            }
            if (e == 0) {
                os << c.get_str();
            } else {
                if (c != 1) {
                    os << c.get_str() << "*";
                }
                os << "L";
                if (e != 1) {
                    os << "^" << e;
                }
            }
            first = false;
        }
        return os.str();
    }

private:
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p)
{
    return os << p.to_string();
}

/// L - 1
inline LaurentPoly l_minus_one()
{
    return LaurentPoly::L(1) - LaurentPoly(1);
}

/// 1 - L^-k
inline LaurentPoly one_minus_l_inv(int k)
{
    return LaurentPoly(1) - LaurentPoly::L(-k);
}

} // namespace conezeta

#endif // CONEZETA_LAURENT_POLY_HPP

#ifndef CONEZETA_TPOLY_HPP
#define CONEZETA_TPOLY_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "laurent_poly.hpp"
#include "univariate.hpp"

namespace conezeta {

/// Polynomial in T with Laurent-polynomial coefficients in L, i.e. an element
/// of Q[L, L^-1][T]. Sparse; no stored coefficient is zero.
class TPoly {
public:
    using Coeffs = std::map<int, LaurentPoly>;

    TPoly() = default;
    TPoly(const LaurentPoly& c) { add_term(0, c); }
    TPoly(long c) : TPoly(LaurentPoly(c)) {}

    /// c * L^l * T^t
    static TPoly monomial(const Rational& c, int l, int t)
    {
        TPoly p;
        p.add_term(t, LaurentPoly::monomial(c, l));
        return p;
    }

    const Coeffs& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
    int low_degree() const { return c_.empty() ? 0 : c_.begin()->first; }

    LaurentPoly coefficient(int t) const
    {
        auto it = c_.find(t);
        return it == c_.end() ? LaurentPoly() : it->second;
    }

    void add_term(int t, const LaurentPoly& c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = c_.emplace(t, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                c_.erase(it);
            }
        }
    }

    TPoly operator-() const
    {
        TPoly r = *this;
        for (auto& [t, c] : r.c_) {
            c = -c;
        }
        return r;
    }

    TPoly& operator+=(const TPoly& o)
    {
        for (const auto& [t, c] : o.c_) {
            add_term(t, c);
        }
        return *this;
    }
    TPoly& operator-=(const TPoly& o) { return *this += -o; }
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }

    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator*(const TPoly& a, const TPoly& b)
    {
        TPoly r;
        for (const auto& [ta, ca] : a.c_) {
            for (const auto& [tb, cb] : b.c_) {
                r.add_term(ta + tb, ca * cb);
            }
        }
        return r;
    }
    friend bool operator==(const TPoly& a, const TPoly& b) { return a.c_ == b.c_; }

    TPoly pow(unsigned k) const
    {
        TPoly result(1);
        TPoly base = *this;
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

    /// Exact quotient in Q[L, L^-1][T], or nullopt if d does not divide.
    std::optional<TPoly> divide_exact(const TPoly& d) const
    {
        if (d.is_zero()) {
            throw std::domain_error("TPoly division by zero");
        }
        TPoly rem = *this;
        TPoly q;
        const int dd = d.degree();
        const LaurentPoly& lead = d.c_.rbegin()->second;
        while (!rem.is_zero() && rem.degree() >= dd) {
            const int top = rem.degree();
            auto f = rem.c_.rbegin()->second.divide_exact(lead);
            if (!f) {
                return std::nullopt;
            }
            const TPoly step = TPoly::shifted(*f, top - dd);
            q += step;
            rem -= step * d;
        }
        if (!rem.is_zero()) {
            return std::nullopt;
        }
        return q;
    }

    /// Substitutes L := p, giving a polynomial in T over Q.
    UniPoly evaluate_l(const Rational& p) const
    {
        if (!c_.empty() && c_.begin()->first < 0) {
            throw std::domain_error("negative power of T");
        }
        std::vector<Rational> v(c_.empty() ? 0 : static_cast<std::size_t>(degree()) + 1, Rational(0));
        for (const auto& [t, c] : c_) {
            v[static_cast<std::size_t>(t)] = c.evaluate(p);
        }
        return UniPoly(std::move(v));
    }

    /// Monomials ordered by T ascending, then L descending,
    /// e.g. "1 - L^-2*T + 3/2*L^3*T^2".
    std::string to_string() const
    {
        if (c_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto& [t, c] : c_) {
            for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
                Rational k = it->second;
                const bool negative = k < 0;
                if (first) {
                    os << (negative ? "-" : "");
                } else {
                    os << (negative ? " - " : " + ");
                }
                if (negative) {
                    k = -k;
                }
                os << monomial_text(k, it->first, t);
                first = false;
            }
        }
        return os.str();
    }

    /// "c*L^l*T^t" with unit parts omitted; c must be positive.
    static std::string monomial_text(const Rational& c, int l, int t)
    {
        std::string out;
        auto append = [&out](const std::string& part) {
            if (!out.empty()) {
                out += "*";
            }
            out += part;
        };
        if (c != 1 || (l == 0 && t == 0)) {
            append(c.get_str());
        }
        if (l != 0) {
            append(l == 1 ? std::string("L") : "L^" + std::to_string(l));
        }
        if (t != 0) {
            append(t == 1 ? std::string("T") : "T^" + std::to_string(t));
        }
        return out;
    }

private:
    static TPoly shifted(const LaurentPoly& c, int t)
    {
        TPoly p;
        p.add_term(t, c);
        return p;
    }

    Coeffs c_;
};

inline std::ostream& operator<<(std::ostream& os, const TPoly& p)
{
    return os << p.to_string();
}

/// 1 - T^A * L^-B
inline TPoly binomial(std::int64_t A, std::int64_t B)
{
    return TPoly(1) - TPoly::monomial(Rational(1), static_cast<int>(-B), static_cast<int>(A));
}

/// Truncated power series in T with Laurent-polynomial coefficients.
using TSeries = std::vector<LaurentPoly>;

inline TSeries series_multiply(const TSeries& a, const TSeries& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    TSeries r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j < n; ++j) {
            if (!b[j].is_zero()) {
                r[i + j] += a[i] * b[j];
            }
        }
    }
    return r;
}

} // namespace conezeta

#endif // CONEZETA_TPOLY_HPP

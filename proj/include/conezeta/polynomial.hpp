#ifndef CONEZETA_POLYNOMIAL_HPP
#define CONEZETA_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace conezeta {

using Exponents = std::vector<int>;

/// Integer polynomial in a fixed number of variables, terms keyed by exponent
/// vectors in lexicographic order.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(std::size_t nvars) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const Integer& c)
    {
        MPoly p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static MPoly variable(std::size_t nvars, std::size_t i)
    {
        Exponents e(nvars, 0);
        e.at(i) = 1;
        MPoly p(nvars);
        p.add_term(e, 1);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponents, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Exponents& e, const Integer& c)
    {
        if (e.size() != nvars_) {
            throw std::invalid_argument("exponent vector length differs from the variable count");
        }
        if (c == 0) {
            return;
        }
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    MPoly operator-() const
    {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) {
            c = -c;
        }
        return r;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b)
    {
        MPoly r = a.nvars_ >= b.nvars_ ? a : b;
        for (const auto& [e, c] : (a.nvars_ >= b.nvars_ ? b : a).terms_) {
            r.add_term(e, c);
        }
        return r;
    }

    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

    friend MPoly operator*(const MPoly& a, const MPoly& b)
    {
        if (a.nvars_ != b.nvars_ && !a.is_zero() && !b.is_zero()) {
            throw std::invalid_argument("polynomials over different variable sets");
        }
        MPoly r(std::max(a.nvars_, b.nvars_));
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    /// Exact quotient a / d, or nothing when d does not divide a.
    std::optional<MPoly> divide_exact(const MPoly& d) const
    {
        if (d.is_zero()) {
            throw std::domain_error("division by the zero polynomial");
        }
        MPoly q(nvars_);
        MPoly r = *this;
        const auto& [de, dc] = *d.terms_.rbegin();
        while (!r.is_zero()) {
            const auto& [re, rc] = *r.terms_.rbegin();
            Exponents e(re.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = re[i] - de[i];
                if (e[i] < 0) {
                    return std::nullopt;
                }
            }
            if (rc % dc != 0) {
                return std::nullopt;
            }
            MPoly t(nvars_);
            t.add_term(e, rc / dc);
            q += t;
            r -= t * d;
        }
        return q;
    }

    /// Componentwise minimum of the exponents of all terms.
    Exponents monomial_gcd() const
    {
        if (is_zero()) {
            return Exponents(nvars_, 0);
        }
        Exponents g = terms_.begin()->first;
        for (const auto& [e, c] : terms_) {
            for (std::size_t i = 0; i < g.size(); ++i) {
                g[i] = std::min(g[i], e[i]);
            }
        }
        return g;
    }

    Integer content() const
    {
        Integer g = 0;
        for (const auto& [e, c] : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        return g;
    }

    /// Divides every term by the monomial x^e.
    MPoly divide_monomial(const Exponents& e) const
    {
        MPoly r(nvars_);
        for (const auto& [te, c] : terms_) {
            Exponents x(te.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] = te[i] - e[i];
                if (x[i] < 0) {
                    throw std::invalid_argument("monomial does not divide the polynomial");
                }
            }
            r.add_term(x, c);
        }
        return r;
    }

    Integer evaluate(const std::vector<Integer>& x) const
    {
        Integer total = 0;
        for (const auto& [e, c] : terms_) {
            Integer v = c;
            for (std::size_t i = 0; i < e.size(); ++i) {
                for (int k = 0; k < e[i]; ++k) {
                    v *= x[i];
                }
            }
            total += v;
        }
        return total;
    }

    /// Terms in descending lexicographic order, e.g. "m11*m22^2 - 4*m12".
    std::string to_string(const std::vector<std::string>& names) const
    {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Integer a = abs(c);
            if (out.empty()) {
                out += c < 0 ? "-" : "";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) {
                    continue;
                }
                mono += (mono.empty() ? "" : "*") + names.at(i);
                if (e[i] > 1) {
                    mono += "^" + std::to_string(e[i]);
                }
            }
            if (mono.empty()) {
                out += a.get_str();
            } else if (a == 1) {
                out += mono;
            } else {
                out += a.get_str() + "*" + mono;
            }
        }
        return out;
    }

private:
    std::size_t nvars_ = 0;
    std::map<Exponents, Integer> terms_;
};

} // namespace conezeta

#endif // CONEZETA_POLYNOMIAL_HPP

#ifndef CONEZETA_MOTIVIC_RATIONAL_HPP
#define CONEZETA_MOTIVIC_RATIONAL_HPP

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "laurent_poly.hpp"
#include "tpoly.hpp"
#include "univariate.hpp"

namespace conezeta {

/// The monomial T^A * L^-B. As a fraction factor it stands for
/// T^A L^-B / (1 - T^A L^-B).
struct PoleFactor {
    std::int64_t A = 0;
    std::int64_t B = 0;

    friend auto operator<=>(const PoleFactor&, const PoleFactor&) = default;
};

/// Which open piece of a cone decomposition a term came from.
struct PieceTag {
    std::vector<int> I;
    std::vector<int> M;
    std::int64_t euler = 0;
    std::size_t index = 0;

    friend bool operator==(const PieceTag&, const PieceTag&) = default;
};

/// coeff * [symbol] * prod(plain) * prod(T^A L^-B / (1 - T^A L^-B)).
struct MotivicTerm {
    LaurentPoly coeff;
    std::vector<PoleFactor> factors;
    std::vector<PoleFactor> plain_factors;
    std::string symbol;
    std::optional<PieceTag> piece;

    void normalize()
    {
        for (const auto& f : factors) {
            if (f.A < 0) {
                throw std::invalid_argument("fraction factor with negative T exponent");
            }
            if (f.A == 0 && f.B == 0) {
                throw std::invalid_argument("fraction factor (0, 0)");
            }
        }
        for (const auto& f : plain_factors) {
            if (f.A < 0) {
                throw std::invalid_argument("plain factor with negative T exponent");
            }
        }
        std::sort(factors.begin(), factors.end());
        std::sort(plain_factors.begin(), plain_factors.end());
    }

    /// Product of the plain factors as a single monomial exponent pair.
    PoleFactor plain_total() const
    {
        PoleFactor t;
        for (const auto& f : plain_factors) {
            t.A = checked_add(t.A, f.A);
            t.B = checked_add(t.B, f.B);
        }
        return t;
    }
};

/// Finite sum of MotivicTerms: an element of the subring of Q(L, T)
/// generated by Q[L, L^-1], T and the fractions 1/(1 - T^A L^-B).
class MotivicRational {
public:
    MotivicRational() = default;
    explicit MotivicRational(std::vector<MotivicTerm> terms)
    {
        for (auto& t : terms) {
            push(std::move(t));
        }
    }
    MotivicRational(const LaurentPoly& c)
    {
        MotivicTerm t;
        t.coeff = c;
        push(std::move(t));
    }
    MotivicRational(long c) : MotivicRational(LaurentPoly(c)) {}

    /// T^A L^-B / (1 - T^A L^-B)
    static MotivicRational fraction(std::int64_t A, std::int64_t B)
    {
        MotivicTerm t;
        t.coeff = LaurentPoly(1);
        t.factors.push_back({A, B});
        return MotivicRational({t});
    }

    /// T^A L^-B
    static MotivicRational monomial(std::int64_t A, std::int64_t B)
    {
        MotivicTerm t;
        t.coeff = LaurentPoly(1);
        t.plain_factors.push_back({A, B});
        return MotivicRational({t});
    }

    /// 1 - T^A L^-B
    static MotivicRational binomial(std::int64_t A, std::int64_t B)
    {
        if (A == 0) {
            return MotivicRational(LaurentPoly(1) - LaurentPoly::L(static_cast<int>(-B)));
        }
        return MotivicRational(1) - monomial(A, B);
    }

    /// 1 / (1 - T^A L^-B) = 1 + T^A L^-B / (1 - T^A L^-B)
    static MotivicRational inverse_binomial(std::int64_t A, std::int64_t B)
    {
        return MotivicRational(1) + fraction(A, B);
    }

    /// The class symbol [name] as a value.
    static MotivicRational symbol(const std::string& name)
    {
        MotivicTerm t;
        t.coeff = LaurentPoly(1);
        t.symbol = name;
        return MotivicRational({t});
    }

    const std::vector<MotivicTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void push(MotivicTerm t)
    {
        if (t.coeff.is_zero()) {
            return;
        }
        t.normalize();
        terms_.push_back(std::move(t));
    }

    MotivicRational operator-() const
    {
        MotivicRational r = *this;
        for (auto& t : r.terms_) {
            t.coeff = -t.coeff;
        }
        return r;
    }

    friend MotivicRational operator+(const MotivicRational& a, const MotivicRational& b)
    {
        MotivicRational r = a;
        for (const auto& t : b.terms_) {
            r.terms_.push_back(t);
        }
        return r;
    }
    friend MotivicRational operator-(const MotivicRational& a, const MotivicRational& b) { return a + (-b); }

    friend MotivicRational operator*(const MotivicRational& a, const MotivicRational& b)
    {
        MotivicRational r;
        for (const auto& x : a.terms_) {
            for (const auto& y : b.terms_) {
                if (!x.symbol.empty() && !y.symbol.empty()) {
                    throw std::invalid_argument("product of two symbolic classes is not supported");
                }
                MotivicTerm t;
                t.coeff = x.coeff * y.coeff;
                t.factors = x.factors;
                t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
                t.plain_factors = x.plain_factors;
                t.plain_factors.insert(t.plain_factors.end(), y.plain_factors.begin(), y.plain_factors.end());
                t.symbol = x.symbol.empty() ? y.symbol : x.symbol;
                r.push(std::move(t));
            }
        }
        return r;
    }

    MotivicRational& operator+=(const MotivicRational& o) { return *this = *this + o; }
    MotivicRational& operator*=(const MotivicRational& o) { return *this = *this * o; }

    /// Substitutes s -> s - d, i.e. T -> L^d T: every (A, B) becomes (A, B - A*d).
    MotivicRational shift_s(std::int64_t d) const
    {
        MotivicRational r = *this;
        for (auto& t : r.terms_) {
            for (auto& f : t.factors) {
                f.B = checked_add(f.B, -checked_mul(f.A, d));
            }
            for (auto& f : t.plain_factors) {
                f.B = checked_add(f.B, -checked_mul(f.A, d));
            }
            t.normalize();
        }
        return r;
    }

    /// One term per line, in storage order; not a normal form.
    std::string structural_text() const
    {
        std::ostringstream os;
        for (const auto& t : terms_) {
            os << "(" << t.coeff.to_string() << ")";
            if (!t.symbol.empty()) {
                os << "*[" << t.symbol << "]";
            }
            for (const auto& f : t.plain_factors) {
                os << "*T^" << f.A << "*L^" << -f.B;
            }
            for (const auto& f : t.factors) {
                os << "*F(" << f.A << "," << f.B << ")";
            }
            os << "\n";
        }
        return os.str();
    }

private:
    std::vector<MotivicTerm> terms_;
};

namespace detail {

/// Numerator of `terms` over the common denominator prod_{f in denom} (1 - f)^k, keyed by symbol.
inline std::map<std::string, TPoly> cross_numerators(const std::vector<const MotivicTerm*>& terms,
                                                     const std::map<PoleFactor, int>& denom,
                                                     const std::vector<int>& signs)
{
    std::map<PoleFactor, std::vector<TPoly>> powers;
    auto binomial_power = [&powers](const PoleFactor& f, int k) -> const TPoly& {
        auto& cache = powers[f];
        if (cache.empty()) {
            cache.push_back(TPoly(1));
        }
        while (static_cast<int>(cache.size()) <= k) {
            cache.push_back(cache.back() * binomial(f.A, f.B));
        }
        return cache[static_cast<std::size_t>(k)];
    };
    std::map<std::string, TPoly> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const MotivicTerm& t = *terms[i];
        std::map<PoleFactor, int> own;
        std::int64_t ta = 0;
        std::int64_t lb = 0;
        for (const auto& f : t.factors) {
            own[f] += 1;
            ta += f.A;
            lb += f.B;
        }
        const PoleFactor plain = t.plain_total();
        ta += plain.A;
        lb += plain.B;
        TPoly n(t.coeff.shifted(static_cast<int>(-lb)) * LaurentPoly(signs[i]));
        n = n * TPoly::monomial(Rational(1), 0, static_cast<int>(ta));
        for (const auto& [f, k] : denom) {
            auto it = own.find(f);
            const int have = it == own.end() ? 0 : it->second;
            if (k > have) {
                n *= binomial_power(f, k - have);
            }
        }
        out[t.symbol] += n;
    }
    return out;
}

} // namespace detail

/// Equality in Q(L, T): both sides are cleared over the union of their
/// fraction factors and the numerators compared in Q[L, L^-1, T].
inline bool mr_equal(const MotivicRational& a, const MotivicRational& b)
{
    std::vector<const MotivicTerm*> all;
    std::vector<int> signs;
    std::map<PoleFactor, int> denom;
    auto collect = [&](const MotivicRational& x, int sign) {
        for (const auto& t : x.terms()) {
            std::map<PoleFactor, int> own;
            for (const auto& f : t.factors) {
                own[f] += 1;
            }
            for (const auto& [f, k] : own) {
                denom[f] = std::max(denom[f], k);
            }
            all.push_back(&t);
            signs.push_back(sign);
        }
    };
    collect(a, 1);
    collect(b, -1);
    for (const auto& [sym, n] : detail::cross_numerators(all, denom, signs)) {
        if (!n.is_zero()) {
            return false;
        }
    }
    return true;
}

/// Coefficients of T^0..T^order of the expansion in T.
inline TSeries mr_series(const MotivicRational& a, int order)
{
    if (order < 0) {
        throw std::invalid_argument("series order must be nonnegative");
    }
    const std::size_t n = static_cast<std::size_t>(order) + 1;
    TSeries total(n);
    for (const auto& t : a.terms()) {
        if (!t.symbol.empty()) {
            throw std::invalid_argument("cannot expand a symbolic class [" + t.symbol + "] as a series in L");
        }
        for (const auto& f : t.factors) {
            if (f.A == 0) {
                throw std::invalid_argument("fraction factor with A = 0 has no expansion in T");
            }
        }
        const PoleFactor plain = t.plain_total();
        TSeries s(n);
        if (plain.A <= order) {
            s[static_cast<std::size_t>(plain.A)] = t.coeff.shifted(static_cast<int>(-plain.B));
        }
        for (const auto& f : t.factors) {
            TSeries g(n);
            for (std::int64_t k = 1; k * f.A <= order; ++k) {
                g[static_cast<std::size_t>(k * f.A)] = LaurentPoly::L(static_cast<int>(-f.B * k));
            }
            s = series_multiply(s, g);
        }
        for (std::size_t i = 0; i < n; ++i) {
            total[i] += s[i];
        }
    }
    return total;
}

using PointCounts = std::map<std::string, Rational>;

/// Substitutes L := p (and each symbolic class by its point count).
inline UniRational mr_specialize(const MotivicRational& a, const Rational& p, const PointCounts& counts = {})
{
    if (p == 0) {
        throw std::domain_error("cannot specialize L at 0");
    }
    UniRational total;
    // Group terms by denominator so each group is summed over a shared denominator.
    std::map<std::vector<PoleFactor>, UniPoly> groups;
    for (const auto& t : a.terms()) {
        Rational scalar = t.coeff.evaluate(p);
        if (!t.symbol.empty()) {
            auto it = counts.find(t.symbol);
            if (it == counts.end()) {
                throw std::invalid_argument("no point count supplied for class [" + t.symbol + "]");
            }
            scalar *= it->second;
        }
        std::int64_t ta = 0;
        std::int64_t lb = 0;
        for (const auto& f : t.factors) {
            ta += f.A;
            lb += f.B;
        }
        const PoleFactor plain = t.plain_total();
        ta += plain.A;
        lb += plain.B;
        scalar *= rational_pow(p, -lb);
        groups[t.factors] += UniPoly::monomial(scalar, static_cast<int>(ta));
    }
    for (const auto& [factors, num] : groups) {
        UniPoly den(1);
        for (const auto& f : factors) {
            den *= UniPoly(1) - UniPoly::monomial(rational_pow(p, -f.B), static_cast<int>(f.A));
        }
        if (den.is_zero()) {
            throw std::domain_error("denominator vanishes after specializing L");
        }
        total += UniRational(num, den);
    }
    return total;
}

/// Numeric value at (L, T) = (l, t).
inline Rational mr_evaluate(const MotivicRational& a, const Rational& l, const Rational& t, const PointCounts& counts = {})
{
    return mr_specialize(a, l, counts).evaluate(t);
}

} // namespace conezeta

#endif // CONEZETA_MOTIVIC_RATIONAL_HPP

#ifndef CONEZETA_CANONICAL_HPP
#define CONEZETA_CANONICAL_HPP

#include <compare>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "motivic_rational.hpp"
#include "tpoly.hpp"
#include "univariate.hpp"

namespace conezeta {

/// An irreducible factor of some 1 - T^A L^-B in Q[L, L^-1][T].
///
/// For a > 0 it is Phi_e(u) with u = T^a L^-beta and gcd(a, beta) = 1,
/// written 1 - u when e = 1. For a = 0 it is Phi_e(L), written L - 1 when e = 1.
struct CycloKey {
    std::int64_t a = 0;
    std::int64_t beta = 0;
    std::int64_t e = 1;

    friend auto operator<=>(const CycloKey&, const CycloKey&) = default;
};

/// Phi_n as an integer polynomial.
inline UniPoly cyclotomic(std::int64_t n)
{
    if (n < 1) {
        throw std::invalid_argument("cyclotomic index must be positive");
    }
    UniPoly p = UniPoly::monomial(Rational(1), static_cast<int>(n)) - UniPoly(1);
    for (std::int64_t d = 1; d < n; ++d) {
        if (n % d == 0) {
            p = UniPoly::divmod(p, cyclotomic(d)).first;
        }
    }
    return p;
}

inline TPoly cyclo_poly(const CycloKey& k)
{
    const UniPoly phi = cyclotomic(k.e);
    TPoly out;
    for (int i = 0; i <= phi.degree(); ++i) {
        const Rational c = phi.coeff(i);
        if (k.a == 0) {
            out += TPoly::monomial(c, i, 0);
        } else {
            out += TPoly::monomial(c, static_cast<int>(-k.beta * i), static_cast<int>(k.a * i));
        }
    }
    if (k.a > 0 && k.e == 1) {
        out = -out;
    }
    return out;
}

/// 1 - T^A L^-B = unit * prod factors.
struct BinomialFactorization {
    LaurentPoly unit;
    std::map<CycloKey, int> factors;
};

inline BinomialFactorization factor_binomial(std::int64_t A, std::int64_t B)
{
    BinomialFactorization out;
    if (A < 0 || (A == 0 && B == 0)) {
        throw std::invalid_argument("binomial factor out of range");
    }
    std::int64_t g;
    CycloKey base;
    if (A > 0) {
        g = std::gcd(A, B < 0 ? -B : B);
        base = {A / g, B / g, 1};
        out.unit = LaurentPoly(1);
    } else {
        g = B < 0 ? -B : B;
        base = {0, 0, 1};
        out.unit = B > 0 ? LaurentPoly::L(static_cast<int>(-B)) : LaurentPoly(-1);
    }
    for (std::int64_t e = 1; e <= g; ++e) {
        if (g % e == 0) {
            CycloKey k = base;
            k.e = e;
            out.factors[k] += 1;
        }
    }
    return out;
}

/// Reduced fraction N / D with D a product of normalized irreducible factors
/// and no factor of D dividing N. Unique for a given rational function, so
/// its text is a canonical serialization.
struct CanonicalForm {
    std::map<std::string, TPoly> numerator;
    std::map<CycloKey, int> denominator;

    std::string to_string() const
    {
        std::ostringstream os;
        bool any = false;
        const bool parens = !denominator.empty() && (numerator.size() > 1 || numerator_terms() > 1);
        if (parens) {
            os << "(";
        }
        for (const auto& [sym, n] : numerator) {
            if (any) {
                os << " + ";
            }
            if (sym.empty()) {
                os << n.to_string();
            } else {
                os << "[" << sym << "]*(" << n.to_string() << ")";
            }
            any = true;
        }
        if (!any) {
            os << "0";
        }
        if (parens) {
            os << ")";
        }
        if (!denominator.empty()) {
            os << " / (";
            bool first = true;
            for (const auto& [k, m] : denominator) {
                if (!first) {
                    os << "*";
                }
                os << "(" << cyclo_poly(k).to_string() << ")";
                if (m != 1) {
                    os << "^" << m;
                }
                first = false;
            }
            os << ")";
        }
        return os.str();
    }

private:
    std::size_t numerator_terms() const
    {
        std::size_t n = 0;
        for (const auto& [sym, p] : numerator) {
            for (const auto& [t, c] : p.coeffs()) {
                n += c.size();
            }
        }
        return n;
    }
};

inline CanonicalForm canonical_form(const MotivicRational& a)
{
    std::map<PoleFactor, BinomialFactorization> cache;
    auto factored = [&cache](const PoleFactor& f) -> const BinomialFactorization& {
        auto it = cache.find(f);
        if (it == cache.end()) {
            it = cache.emplace(f, factor_binomial(f.A, f.B)).first;
        }
        return it->second;
    };
    struct Pending {
        TPoly num;
        std::map<CycloKey, int> den;
        std::string symbol;
    };
    std::vector<Pending> parts;
    std::map<CycloKey, int> common;
    for (const auto& t : a.terms()) {
        Pending p;
        p.symbol = t.symbol;
        std::int64_t ta = 0;
        std::int64_t lb = 0;
        LaurentPoly units(1);
        for (const auto& f : t.factors) {
            const auto& bf = factored(f);
            ta += f.A;
            lb += f.B;
            units *= bf.unit;
            for (const auto& [k, m] : bf.factors) {
                p.den[k] += m;
            }
        }
        const PoleFactor plain = t.plain_total();
        ta += plain.A;
        lb += plain.B;
        // Units are monomials; dividing by them is exact.
        LaurentPoly c = *t.coeff.shifted(static_cast<int>(-lb)).divide_exact(units);
        p.num = TPoly(c) * TPoly::monomial(Rational(1), 0, static_cast<int>(ta));
        for (const auto& [k, m] : p.den) {
            common[k] = std::max(common[k], m);
        }
        parts.push_back(std::move(p));
    }
    std::map<CycloKey, TPoly> polys;
    for (const auto& [k, m] : common) {
        polys.emplace(k, cyclo_poly(k));
    }
    CanonicalForm out;
    for (auto& p : parts) {
        TPoly n = p.num;
        for (const auto& [k, m] : common) {
            auto it = p.den.find(k);
            const int have = it == p.den.end() ? 0 : it->second;
            if (m > have) {
                n *= polys.at(k).pow(static_cast<unsigned>(m - have));
            }
        }
        out.numerator[p.symbol] += n;
    }
    for (auto it = out.numerator.begin(); it != out.numerator.end();) {
        it = it->second.is_zero() ? out.numerator.erase(it) : std::next(it);
    }
    if (out.numerator.empty()) {
        return out;
    }
    for (const auto& [k, m] : common) {
        int left = m;
        while (left > 0) {
            std::map<std::string, TPoly> divided;
            bool ok = true;
            for (const auto& [sym, n] : out.numerator) {
                auto q = n.divide_exact(polys.at(k));
                if (!q) {
                    ok = false;
                    break;
                }
                divided[sym] = std::move(*q);
            }
            if (!ok) {
                break;
            }
            out.numerator = std::move(divided);
            --left;
        }
        if (left > 0) {
            out.denominator[k] = left;
        }
    }
    return out;
}

inline std::string canonical_text(const MotivicRational& a)
{
    return canonical_form(a).to_string();
}

/// T-expansion of the reduced fraction N / D up to T^order. Works whenever
/// D has no pure-L factor, even if some term of `a` had one.
inline TSeries canonical_series(const MotivicRational& a, int order)
{
    if (order < 0) {
        throw std::invalid_argument("series order must be nonnegative");
    }
    const CanonicalForm c = canonical_form(a);
    const auto n = static_cast<std::size_t>(order) + 1;
    TSeries num(n);
    for (const auto& [sym, p] : c.numerator) {
        if (!sym.empty()) {
            throw std::invalid_argument("cannot expand a symbolic class [" + sym + "] as a series in L");
        }
        for (const auto& [t, coeff] : p.coeffs()) {
            if (t < 0) {
                throw std::invalid_argument("numerator has a negative power of T");
            }
            if (static_cast<std::size_t>(t) < n) {
                num[static_cast<std::size_t>(t)] += coeff;
            }
        }
    }
    // 1 / Phi_e(u) has constant term 1, so expand it by the recurrence s_k = -sum_{j>0} phi_j s_{k-j}.
    for (const auto& [k, m] : c.denominator) {
        if (k.a == 0) {
            throw std::invalid_argument("denominator factor in L alone has no expansion in T");
        }
        const TPoly phi = cyclo_poly(k);
        TSeries inv(n);
        inv[0] = LaurentPoly(1);
        for (std::size_t i = 1; i < n; ++i) {
            for (const auto& [t, coeff] : phi.coeffs()) {
                if (t > 0 && static_cast<std::size_t>(t) <= i) {
                    inv[i] -= coeff * inv[i - static_cast<std::size_t>(t)];
                }
            }
        }
        for (int i = 0; i < m; ++i) {
            num = series_multiply(num, inv);
        }
    }
    return num;
}

/// Builds prod (1 - T^A L^-B)^power times a coefficient, as a MotivicRational.
struct BinomialPower {
    std::int64_t A = 0;
    std::int64_t B = 0;
    int power = 1;
};

inline MotivicRational product_form(const LaurentPoly& coeff, const std::vector<BinomialPower>& factors)
{
    MotivicRational r(coeff);
    for (const auto& f : factors) {
        if (f.A == 0 && f.B == 0) {
            throw std::invalid_argument("binomial factor (0, 0) vanishes");
        }
        const MotivicRational base = f.power >= 0 ? MotivicRational::binomial(f.A, f.B)
                                                  : MotivicRational::inverse_binomial(f.A, f.B);
        for (int i = 0; i < (f.power >= 0 ? f.power : -f.power); ++i) {
            r *= base;
        }
    }
    return r;
}

} // namespace conezeta

#endif // CONEZETA_CANONICAL_HPP

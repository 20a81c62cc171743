#ifndef CONEZETA_RATIONAL_FUNCTION_S_HPP
#define CONEZETA_RATIONAL_FUNCTION_S_HPP

#include <compare>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "rational.hpp"
#include "univariate.hpp"

namespace conezeta {

/// The linear form a*s + b. Normalized instances have a > 0 and gcd(a, b) = 1.
struct LinearFactor {
    std::int64_t a = 1;
    std::int64_t b = 0;

    friend auto operator<=>(const LinearFactor&, const LinearFactor&) = default;

    std::string to_string() const
    {
        std::ostringstream os;
        if (a != 1) {
            os << a << "*";
        }
        os << "s";
        if (b > 0) {
            os << " + " << b;
        } else if (b < 0) {
            os << " - " << -b;
        }
        return os.str();
    }
};

/// Rational function in s whose denominator is a product of linear factors:
/// scalar * numerator / prod (a*s + b)^k.
///
/// Canonical after every operation: denominators normalized and sorted,
/// every factor that divides the numerator cancelled, the numerator a
/// primitive integer polynomial with positive leading coefficient.
class RationalFunctionS {
public:
    RationalFunctionS() : scalar_(0), numerator_(1) {}
    RationalFunctionS(const Rational& c) : scalar_(c), numerator_(1) { reduce(); }
    RationalFunctionS(long c) : RationalFunctionS(Rational(c)) {}

    static RationalFunctionS polynomial(const UniPoly& p)
    {
        RationalFunctionS r;
        r.scalar_ = 1;
        r.numerator_ = p;
        r.reduce();
        return r;
    }

    /// 1 / (a*s + b); (a, b) must not both vanish.
    static RationalFunctionS inverse_linear(std::int64_t a, std::int64_t b)
    {
        if (a == 0 && b == 0) {
            throw std::domain_error("linear factor (0, 0)");
        }
        RationalFunctionS r;
        r.scalar_ = 1;
        r.numerator_ = UniPoly(1);
        r.denominator_[LinearFactor{a, b}] += 1;
        r.reduce();
        return r;
    }

    const Rational& scalar() const { return scalar_; }
    const UniPoly& numerator() const { return numerator_; }
    const std::map<LinearFactor, int>& denominator() const { return denominator_; }
    bool is_zero() const { return scalar_ == 0; }

    friend RationalFunctionS operator*(const RationalFunctionS& x, const RationalFunctionS& y)
    {
        RationalFunctionS r;
        r.scalar_ = x.scalar_ * y.scalar_;
        r.numerator_ = x.numerator_ * y.numerator_;
        r.denominator_ = x.denominator_;
        for (const auto& [f, k] : y.denominator_) {
            r.denominator_[f] += k;
        }
        r.reduce();
        return r;
    }

    friend RationalFunctionS operator+(const RationalFunctionS& x, const RationalFunctionS& y)
    {
        if (x.is_zero()) {
            return y;
        }
        if (y.is_zero()) {
            return x;
        }
        std::map<LinearFactor, int> common = x.denominator_;
        for (const auto& [f, k] : y.denominator_) {
            common[f] = std::max(common[f], k);
        }
        auto lift = [&common](const RationalFunctionS& z) {
            UniPoly n = z.numerator_ * UniPoly(z.scalar_);
            for (const auto& [f, k] : common) {
                auto it = z.denominator_.find(f);
                const int have = it == z.denominator_.end() ? 0 : it->second;
                for (int i = have; i < k; ++i) {
                    n *= UniPoly::linear(Rational(f.a), Rational(f.b));
                }
            }
            return n;
        };
        RationalFunctionS r;
        r.scalar_ = 1;
        r.numerator_ = lift(x) + lift(y);
        r.denominator_ = common;
        r.reduce();
        return r;
    }

    friend RationalFunctionS operator-(const RationalFunctionS& x, const RationalFunctionS& y)
    {
        return x + y * RationalFunctionS(-1);
    }

    RationalFunctionS& operator+=(const RationalFunctionS& o) { return *this = *this + o; }
    RationalFunctionS& operator*=(const RationalFunctionS& o) { return *this = *this * o; }

    /// Division by a value whose numerator splits into rational linear factors.
    friend RationalFunctionS operator/(const RationalFunctionS& x, const RationalFunctionS& y)
    {
        if (y.is_zero()) {
            throw std::domain_error("division by zero rational function");
        }
        RationalFunctionS inv;
        inv.scalar_ = 1 / y.scalar_;
        inv.numerator_ = UniPoly(1);
        for (const auto& [f, k] : y.denominator_) {
            for (int i = 0; i < k; ++i) {
                inv.numerator_ *= UniPoly::linear(Rational(f.a), Rational(f.b));
            }
        }
        UniPoly rest = y.numerator_;
        while (rest.degree() > 0) {
            auto root = rational_root(rest);
            if (!root) {
                throw std::domain_error("divisor numerator does not split into linear factors over Q");
            }
            const Integer a = root->get_den();
            const Integer b = -root->get_num();
            inv.denominator_[LinearFactor{to_int64(a), to_int64(b)}] += 1;
            rest = UniPoly::divmod(rest, UniPoly::linear(Rational(a), Rational(b))).first;
        }
        inv.scalar_ /= rest.coeff(0);
        inv.reduce();
        return x * inv;
    }

    friend bool operator==(const RationalFunctionS& x, const RationalFunctionS& y)
    {
        return x.scalar_ == y.scalar_ && x.numerator_ == y.numerator_ && x.denominator_ == y.denominator_;
    }

    Rational evaluate(const Rational& s) const
    {
        Rational d = 1;
        for (const auto& [f, k] : denominator_) {
            d *= rational_pow(Rational(f.a) * s + Rational(f.b), k);
        }
        if (d == 0) {
            throw std::domain_error("evaluation at a pole");
        }
        return scalar_ * numerator_.evaluate(s) / d;
    }

    /// Canonical text: "scalar * (numerator) / (factor*factor^k...)".
    std::string to_string() const
    {
        if (is_zero()) {
            return "0";
        }
        std::ostringstream os;
        os << scalar_.get_str() << " * (" << numerator_.to_string("s") << ")";
        if (!denominator_.empty()) {
            os << " / (";
            bool first = true;
            for (const auto& [f, k] : denominator_) {
                if (!first) {
                    os << "*";
                }
                os << "(" << f.to_string() << ")";
                if (k != 1) {
                    os << "^" << k;
                }
                first = false;
            }
            os << ")";
        }
        return os.str();
    }

private:
    /// Some rational root of p, if any (p has rational coefficients).
    static std::optional<Rational> rational_root(const UniPoly& p)
    {
        // Scale to integer coefficients.
        Integer lcm = 1;
        for (const auto& c : p.coeffs()) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
        }
        std::vector<Integer> ic;
        for (const auto& c : p.coeffs()) {
            Rational scaled = c * Rational(lcm);
            ic.push_back(scaled.get_num());
        }
        std::size_t low = 0;
        while (low < ic.size() && ic[low] == 0) {
            ++low;
        }
        if (low > 0) {
            return Rational(0);
        }
        auto divisors = [](Integer n) {
            std::vector<Integer> ds;
            n = abs(n);
            for (Integer d = 1; d * d <= n; ++d) {
                if (n % d == 0) {
                    ds.push_back(d);
                    ds.push_back(n / d);
                }
            }
            return ds;
        };
        for (const auto& num : divisors(ic.front())) {
            for (const auto& den : divisors(ic.back())) {
                for (int sign : {1, -1}) {
                    Rational cand(num * sign, den);
                    cand.canonicalize();
                    if (p.evaluate(cand) == 0) {
                        return cand;
                    }
                }
            }
        }
        return std::nullopt;
    }

    void reduce()
    {
        if (scalar_ == 0 || numerator_.is_zero()) {
            scalar_ = 0;
            numerator_ = UniPoly(1);
            denominator_.clear();
            return;
        }
        std::map<LinearFactor, int> normalized;
        for (const auto& [f, k] : denominator_) {
            if (k == 0) {
                continue;
            }
            if (f.a == 0) {
                if (f.b == 0) {
                    throw std::domain_error("zero linear factor in denominator");
                }
                scalar_ /= rational_pow(Rational(f.b), k);
                continue;
            }
            std::int64_t a = f.a;
            std::int64_t b = f.b;
            const std::int64_t g = std::gcd(a, b);
            a /= g;
            b /= g;
            scalar_ /= rational_pow(Rational(g), k);
            if (a < 0) {
                a = -a;
                b = -b;
                if (k % 2 != 0) {
                    scalar_ = -scalar_;
                }
            }
            normalized[LinearFactor{a, b}] += k;
        }
        denominator_.clear();
        for (auto& [f, k] : normalized) {
            const Rational root = Rational(-f.b) / Rational(f.a);
            const UniPoly lin = UniPoly::linear(Rational(f.a), Rational(f.b));
            while (k > 0 && numerator_.evaluate(root) == 0) {
                numerator_ = UniPoly::divmod(numerator_, lin).first;
                --k;
            }
            if (k > 0) {
                denominator_[f] = k;
            }
        }
        // Content: numerator becomes a primitive integer polynomial, positive leading coefficient.
        Integer den_lcm = 1;
        Integer num_gcd = 0;
        for (const auto& c : numerator_.coeffs()) {
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        }
        for (const auto& c : numerator_.coeffs()) {
            Rational scaled = c * Rational(den_lcm);
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_num_mpz_t());
        }
        Rational content(num_gcd, den_lcm);
        content.canonicalize();
        if (numerator_.leading() < 0) {
            content = -content;
        }
        numerator_ = numerator_ * UniPoly(1 / content);
        scalar_ *= content;
    }

    Rational scalar_;
    UniPoly numerator_;
    std::map<LinearFactor, int> denominator_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalFunctionS& r)
{
    return os << r.to_string();
}

} // namespace conezeta

#endif // CONEZETA_RATIONAL_FUNCTION_S_HPP

#ifndef CONEZETA_UNIVARIATE_HPP
#define CONEZETA_UNIVARIATE_HPP

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace conezeta {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(const Rational& c)
    {
        if (c != 0) {
            coeffs_.push_back(c);
        }
    }
    UniPoly(long c) : UniPoly(Rational(c)) {}
    explicit UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    /// c * x^k
    static UniPoly monomial(const Rational& c, int k)
    {
        std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
        v.back() = c;
        return UniPoly(std::move(v));
    }

    /// a*x + b
    static UniPoly linear(const Rational& a, const Rational& b) { return UniPoly(std::vector<Rational>{b, a}); }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational coeff(int k) const
    {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)] : Rational(0);
    }
    Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

    Rational evaluate(const Rational& x) const
    {
        Rational r = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            r = r * x + *it;
        }
        return r;
    }

    UniPoly operator-() const
    {
        UniPoly r = *this;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b)
    {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            v[i] += a.coeffs_[i];
        }
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
            v[i] += b.coeffs_[i];
        }
        return UniPoly(std::move(v));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return UniPoly();
        }
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return UniPoly(std::move(v));
    }

    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division: returns {quotient, remainder}.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b)
    {
        if (b.is_zero()) {
            throw std::domain_error("polynomial division by zero");
        }
        std::vector<Rational> rem = a.coeffs_;
        const int db = b.degree();
        const int dq = a.degree() - db;
        if (dq < 0) {
            return {UniPoly(), a};
        }
        std::vector<Rational> q(static_cast<std::size_t>(dq) + 1, Rational(0));
        for (int k = dq; k >= 0; --k) {
            const Rational f = rem[static_cast<std::size_t>(k + db)] / b.leading();
            q[static_cast<std::size_t>(k)] = f;
            if (f == 0) {
                continue;
            }
            for (int j = 0; j <= db; ++j) {
                rem[static_cast<std::size_t>(k + j)] -= f * b.coeffs_[static_cast<std::size_t>(j)];
            }
        }
        return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
    }

    UniPoly monic() const
    {
        if (is_zero()) {
            return *this;
        }
        UniPoly r = *this;
        const Rational l = leading();
        for (auto& c : r.coeffs_) {
            c /= l;
        }
        return r;
    }

    /// Monic gcd (zero if both are zero).
    static UniPoly gcd(UniPoly a, UniPoly b)
    {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Human readable, descending degree, e.g. "3*s + 8".
    std::string to_string(const std::string& var) const
    {
        if (is_zero()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            Rational c = coeffs_[static_cast<std::size_t>(k)];
            if (c == 0) {
                continue;
            }
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
            if (k == 0) {
                os << c.get_str();
            } else {
                if (c != 1) {
                    os << c.get_str() << "*";
                }
                os << var;
                if (k != 1) {
                    os << "^" << k;
                }
            }
            first = false;
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<Rational> coeffs_;
};

/// Reduced univariate rational function num/den over Q.
///
/// Normal form: gcd(num, den) = 1; den(0) = 1 when den has a nonzero constant
/// term, otherwise den is monic.
class UniRational {
public:
    UniRational() : num_(), den_(1) {}
    UniRational(const UniPoly& p) : num_(p), den_(1) {}
    UniRational(const Rational& c) : num_(c), den_(1) {}
    UniRational(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    const UniPoly& numerator() const { return num_; }
    const UniPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend UniRational operator+(const UniRational& a, const UniRational& b)
    {
        return UniRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend UniRational operator-(const UniRational& a, const UniRational& b)
    {
        return UniRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend UniRational operator*(const UniRational& a, const UniRational& b)
    {
        return UniRational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend UniRational operator/(const UniRational& a, const UniRational& b)
    {
        if (b.is_zero()) {
            throw std::domain_error("rational function division by zero");
        }
        return UniRational(a.num_ * b.den_, a.den_ * b.num_);
    }
    UniRational& operator+=(const UniRational& o) { return *this = *this + o; }
    UniRational& operator*=(const UniRational& o) { return *this = *this * o; }

    friend bool operator==(const UniRational& a, const UniRational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    Rational evaluate(const Rational& x) const
    {
        const Rational d = den_.evaluate(x);
        if (d == 0) {
            throw std::domain_error("rational function evaluated at a pole");
        }
        return num_.evaluate(x) / d;
    }

    /// Power-series coefficients x^0..x^order; requires den(0) != 0.
    std::vector<Rational> series(int order) const
    {
        const Rational d0 = den_.coeff(0);
        if (d0 == 0) {
            throw std::domain_error("rational function has a pole at 0; no power series");
        }
        std::vector<Rational> out(static_cast<std::size_t>(order) + 1, Rational(0));
        for (int n = 0; n <= order; ++n) {
            Rational acc = num_.coeff(n);
            for (int k = 1; k <= std::min(n, den_.degree()); ++k) {
                acc -= den_.coeff(k) * out[static_cast<std::size_t>(n - k)];
            }
            out[static_cast<std::size_t>(n)] = acc / d0;
        }
        return out;
    }

    std::string to_string(const std::string& var) const
    {
        if (den_ == UniPoly(1)) {
            return num_.to_string(var);
        }
        return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
    }

private:
    void reduce()
    {
        if (den_.is_zero()) {
            throw std::domain_error("rational function with zero denominator");
        }
        if (num_.is_zero()) {
            den_ = UniPoly(1);
            return;
        }
        const UniPoly g = UniPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = UniPoly::divmod(num_, g).first;
            den_ = UniPoly::divmod(den_, g).first;
        }
        Rational scale = den_.coeff(0) != 0 ? den_.coeff(0) : den_.leading();
        const UniPoly inv(1 / scale);
        num_ = num_ * inv;
        den_ = den_ * inv;
    }

    UniPoly num_;
    UniPoly den_;
};

} // namespace conezeta

#endif // CONEZETA_UNIVARIATE_HPP

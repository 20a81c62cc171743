#ifndef CONEZETA_RATIONAL_HPP
#define CONEZETA_RATIONAL_HPP

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace conezeta {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<std::int64_t>;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(const std::string& text)
{
    Rational r;
    if (r.set_str(text, 10) != 0) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
    if (r.get_den() == 0) {
        throw std::domain_error("rational with zero denominator: '" + text + "'");
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

/// base^e for any integer e; throws on 0^negative.
inline Rational rational_pow(const Rational& base, long e)
{
    if (e < 0) {
        if (base == 0) {
            throw std::domain_error("division by zero in rational_pow");
        }
        Rational inv = 1 / base;
        return rational_pow(inv, -e);
    }
    Rational result = 1;
    Rational b = base;
    unsigned long k = static_cast<unsigned long>(e);
    while (k != 0) {
        if (k & 1UL) {
            result *= b;
        }
        k >>= 1;
        if (k != 0) {
            b *= b;
        }
    }
    return result;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("int64 overflow in addition");
    }
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("int64 overflow in multiplication");
    }
    return r;
}

inline std::int64_t to_int64(const Integer& z)
{
    if (!z.fits_slong_p()) {
        throw std::overflow_error("integer does not fit in 64 bits");
    }
    return z.get_si();
}

inline std::int64_t vector_gcd(const IntVec& v)
{
    std::int64_t g = 0;
    for (auto x : v) {
        g = std::gcd(g, x);
    }
    return g;
}

/// Divides out the content; the zero vector is returned unchanged.
inline IntVec make_primitive(IntVec v)
{
    const std::int64_t g = vector_gcd(v);
    if (g > 1) {
        for (auto& x : v) {
            x /= g;
        }
    }
    return v;
}

inline std::int64_t dot(const IntVec& a, const IntVec& b)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s = checked_add(s, checked_mul(a[i], b[i]));
    }
    return s;
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

} // namespace conezeta

#endif // CONEZETA_RATIONAL_HPP

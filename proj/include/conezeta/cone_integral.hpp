#ifndef CONEZETA_CONE_INTEGRAL_HPP
#define CONEZETA_CONE_INTEGRAL_HPP

#include <algorithm>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "cone.hpp"
#include "laurent_poly.hpp"
#include "motivic_rational.hpp"
#include "parse.hpp"

namespace conezeta {

/// A polynomial of cone integral data: a monomial given by its exponent
/// vector, or an arbitrary polynomial kept as text for reference only.
struct PolyRecord {
    bool monomial = true;
    IntVec exponents;
    std::string text;

    friend bool operator==(const PolyRecord&, const PolyRecord&) = default;
};

struct Condition {
    PolyRecord f;
    PolyRecord g;

    friend bool operator==(const Condition&, const Condition&) = default;
};

/// Integrand |f0|^s |g0| over the region {ord f_i <= ord g_i}.
struct ConeIntegralData {
    std::vector<std::string> variables;
    PolyRecord f0;
    PolyRecord g0;
    std::vector<Condition> conditions;

    std::size_t m() const { return variables.size(); }

    bool monomial() const
    {
        if (!f0.monomial || !g0.monomial) {
            return false;
        }
        return std::all_of(conditions.begin(), conditions.end(),
                           [](const Condition& c) { return c.f.monomial && c.g.monomial; });
    }

    void validate() const
    {
        auto check = [this](const PolyRecord& p) {
            if (p.monomial) {
                if (p.exponents.size() != m()) {
                    throw std::invalid_argument("monomial exponent vector has the wrong length");
                }
                if (std::any_of(p.exponents.begin(), p.exponents.end(), [](std::int64_t e) { return e < 0; })) {
                    throw std::invalid_argument("monomial exponents must be nonnegative");
                }
            }
        };
        check(f0);
        check(g0);
        for (const auto& c : conditions) {
            check(c.f);
            check(c.g);
        }
    }
};

/// [E°_I] and its Euler characteristic.
struct Stratum {
    ClassExpr cls;
    std::int64_t euler = 0;

    friend bool operator==(const Stratum&, const Stratum&) = default;
};

struct Divisor {
    std::string name;
    /// Multiplicities along this divisor of f_0..f_l and g_0..g_l.
    IntVec nf;
    IntVec ng;
    std::int64_t nu = 1;

    friend bool operator==(const Divisor&, const Divisor&) = default;
};

/// Numerical data of an embedded resolution of the cone integral data.
struct ResolutionData {
    std::size_t ambient_dim = 0;
    std::vector<Divisor> divisors;
    /// Keyed by sorted 1-based divisor index sets.
    std::map<std::vector<int>, Stratum> strata;
    std::string notes;

    std::size_t t() const { return divisors.size(); }
    std::size_t conditions() const { return divisors.empty() ? 0 : divisors.front().nf.size() - 1; }

    friend bool operator==(const ResolutionData&, const ResolutionData&) = default;

    void validate() const
    {
        for (const auto& d : divisors) {
            if (d.nf.size() != conditions() + 1 || d.ng.size() != conditions() + 1) {
                throw std::invalid_argument("divisor '" + d.name + "' has inconsistent multiplicity vectors");
            }
            if (d.nu < 1) {
                throw std::invalid_argument("divisor '" + d.name + "' has nonpositive nu");
            }
            for (std::size_t i = 0; i < d.nf.size(); ++i) {
                if (d.nf[i] < 0 || d.ng[i] < 0) {
                    throw std::invalid_argument("divisor '" + d.name + "' has a negative multiplicity");
                }
            }
        }
        if (strata.find({}) == strata.end()) {
            throw std::invalid_argument("strata must include the empty index set");
        }
        for (const auto& [I, s] : strata) {
            for (std::size_t i = 0; i < I.size(); ++i) {
                if (I[i] < 1 || static_cast<std::size_t>(I[i]) > t() || (i > 0 && I[i] <= I[i - 1])) {
                    throw std::invalid_argument("stratum index set out of range or unsorted");
                }
            }
            if (s.cls.symbol.empty() && s.cls.coeff.at_one() != Rational(s.euler)) {
                throw std::invalid_argument("stratum euler number differs from its class at L = 1");
            }
        }
    }
};

/// Coordinate hyperplanes as the divisors of an already monomial integrand.
inline ResolutionData monomial_resolution(const ConeIntegralData& d)
{
    if (!d.monomial()) {
        throw std::invalid_argument("monomial_resolution needs monomial cone integral data");
    }
    d.validate();
    const std::size_t m = d.m();
    ResolutionData r;
    r.ambient_dim = m;
    for (std::size_t j = 0; j < m; ++j) {
        Divisor div;
        div.name = d.variables[j];
        div.nf.push_back(d.f0.exponents[j]);
        div.ng.push_back(d.g0.exponents[j]);
        for (const auto& c : d.conditions) {
            div.nf.push_back(c.f.exponents[j]);
            div.ng.push_back(c.g.exponents[j]);
        }
        div.nu = 1;
        r.divisors.push_back(div);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<int> I;
        for (std::size_t j = 0; j < m; ++j) {
            if (mask & (std::size_t{1} << j)) {
                I.push_back(static_cast<int>(j) + 1);
            }
        }
        Stratum s;
        s.cls.coeff = l_minus_one().pow(static_cast<unsigned>(m - I.size()));
        s.euler = I.size() == m ? 1 : 0;
        r.strata.emplace(I, s);
    }
    return r;
}

/// The cone sum_j Nf[j][i] x_j <= sum_j Ng[j][i] x_j, i = 1..l, in R^t.
inline ConeSpec cone_of(const ResolutionData& r)
{
    ConeSpec c;
    c.t = static_cast<int>(r.t());
    for (std::size_t i = 1; i <= r.conditions(); ++i) {
        ConeInequality q;
        for (const auto& d : r.divisors) {
            q.f.push_back(d.nf[i]);
            q.g.push_back(d.ng[i]);
        }
        c.inequalities.push_back(q);
    }
    return c;
}

struct EdgeConstant {
    std::int64_t A = 0;
    std::int64_t B = 0;

    friend auto operator<=>(const EdgeConstant&, const EdgeConstant&) = default;
};

using EdgeConstants = std::vector<EdgeConstant>;

/// A_k = sum_j q_kj N_j(f_0), B_k = sum_j q_kj (N_j(g_0) + nu_j) per edge q_k.
inline EdgeConstants edge_constants(const ResolutionData& r, const Decomposition& d)
{
    if (static_cast<std::size_t>(d.t) != r.t()) {
        throw std::invalid_argument("decomposition dimension differs from the number of divisors");
    }
    EdgeConstants out;
    for (const auto& q : d.edges) {
        EdgeConstant e;
        for (std::size_t j = 0; j < q.size(); ++j) {
            e.A = checked_add(e.A, checked_mul(q[j], r.divisors[j].nf[0]));
            e.B = checked_add(e.B, checked_mul(q[j], r.divisors[j].ng[0] + r.divisors[j].nu));
        }
        out.push_back(e);
    }
    return out;
}

/// sum_k (L-1)^|I_k| L^-m [E°_I_k] prod_{j in M_k} T^A_j L^-B_j / (1 - T^A_j L^-B_j).
/// Every term carries its piece tag.
inline MotivicRational assemble_geom(const ResolutionData& r, const Decomposition& d, const EdgeConstants& e)
{
    MotivicRational out;
    for (std::size_t k = 0; k < d.pieces.size(); ++k) {
        const Piece& p = d.pieces[k];
        if (p.I.size() < p.M.size()) {
            throw std::logic_error("piece with |I| < |M|");
        }
        auto it = r.strata.find(p.I);
        if (it == r.strata.end()) {
            std::string key;
            for (int i : p.I) {
                key += (key.empty() ? "" : ",") + std::to_string(i);
            }
            throw std::invalid_argument("no stratum class for I = {" + key + "}");
        }
        MotivicTerm t;
        t.coeff = l_minus_one().pow(static_cast<unsigned>(p.I.size())) *
                  LaurentPoly::L(-static_cast<int>(r.ambient_dim)) * it->second.cls.coeff;
        t.symbol = it->second.cls.symbol;
        for (int j : p.M) {
            const EdgeConstant& c = e.at(static_cast<std::size_t>(j - 1));
            t.factors.push_back({c.A, c.B});
        }
        t.piece = PieceTag{p.I, p.M, it->second.euler, k};
        out.push(std::move(t));
    }
    return out;
}

/// prod_{i=1..d} (1 - L^-i) / (1 - L^-1)^d = prod_{i=1..d} (1 + L^-1 + ... + L^-(i-1)).
inline LaurentPoly triangular_prefactor(int d)
{
    LaurentPoly r(1);
    for (int i = 1; i <= d; ++i) {
        LaurentPoly s;
        for (int j = 0; j < i; ++j) {
            s += LaurentPoly::L(-j);
        }
        r *= s;
    }
    return r;
}

/// Shifts s -> s - d and multiplies by prod_{i=1..d} (1 - L^-i)^-1. The
/// division is exact on each term's coefficient where possible; otherwise
/// 1/(1 - L^-i) is kept as L^i times the fraction factor (0, i).
inline MotivicRational zeta_from_geom(const MotivicRational& z, int d)
{
    const MotivicRational shifted = z.shift_s(d);
    std::vector<MotivicTerm> terms;
    for (MotivicTerm t : shifted.terms()) {
        for (int i = 1; i <= d; ++i) {
            auto q = t.coeff.divide_exact(one_minus_l_inv(i));
            if (q) {
                t.coeff = *q;
            } else {
                t.coeff = t.coeff.shifted(i);
                t.factors.push_back({0, i});
            }
        }
        t.piece.reset();
        terms.push_back(std::move(t));
    }
    return MotivicRational(std::move(terms));
}

/// Upper bound on the error of each coefficient returned by direct_eval:
/// the measure of the points with some coordinate above cap.
inline Rational truncation_bound(const ConeIntegralData& d, const Rational& p, std::int64_t cap)
{
    return Rational(static_cast<long>(d.m())) * rational_pow(p, -(cap + 1));
}

/// Lattice sum of (1 - p^-1)^m p^-(sum a) p^-(g0.a) T^(f0.a) over the cone
/// points with every a_i <= cap, coefficients of T^0..T^order. Each
/// coefficient is below the exact value by at most truncation_bound.
inline std::vector<Rational> direct_eval(const ConeIntegralData& d, const Rational& p, std::int64_t cap, int order,
                                         unsigned threads = 1)
{
    if (!d.monomial()) {
        throw std::invalid_argument("direct_eval needs monomial cone integral data");
    }
    d.validate();
    if (p <= 1) {
        throw std::invalid_argument("direct_eval needs p > 1");
    }
    const std::size_t m = d.m();
    const std::size_t n = static_cast<std::size_t>(order) + 1;
    if (m == 0) {
        std::vector<Rational> out(n, Rational(0));
        out[0] = 1;
        return out;
    }
    const Rational measure = rational_pow(1 - 1 / p, static_cast<long>(m));
    auto worker = [&](std::int64_t lead_begin, std::int64_t lead_step) {
        std::vector<Rational> acc(n, Rational(0));
        std::map<std::int64_t, Rational> cache;
        IntVec a(m, 0);
        for (std::int64_t lead = lead_begin; lead <= cap; lead += lead_step) {
            a.assign(m, 0);
            a[0] = lead;
            for (;;) {
                bool inside = true;
                for (const auto& c : d.conditions) {
                    if (dot(c.f.exponents, a) > dot(c.g.exponents, a)) {
                        inside = false;
                        break;
                    }
                }
                if (inside) {
                    const std::int64_t deg = dot(d.f0.exponents, a);
                    if (deg < static_cast<std::int64_t>(n)) {
                        std::int64_t weight = dot(d.g0.exponents, a);
                        for (auto x : a) {
                            weight += x;
                        }
                        auto it = cache.find(weight);
                        if (it == cache.end()) {
                            it = cache.emplace(weight, rational_pow(p, -weight)).first;
                        }
                        acc[static_cast<std::size_t>(deg)] += it->second;
                    }
                }
                std::size_t i = 1;
                while (i < m) {
                    if (++a[i] <= cap) {
                        break;
                    }
                    a[i] = 0;
                    ++i;
                }
                if (i >= m) {
                    break;
                }
            }
        }
        return acc;
    };
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(cap + 1)));
    std::vector<std::vector<Rational>> partial(workers);
    if (workers == 1) {
        partial[0] = worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] { partial[w] = worker(w, workers); });
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    std::vector<Rational> out(n, Rational(0));
    for (const auto& part : partial) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] += part[i];
        }
    }
    for (auto& x : out) {
        x *= measure;
    }
    return out;
}

} // namespace conezeta

#endif // CONEZETA_CONE_INTEGRAL_HPP

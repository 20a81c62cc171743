#include <random>

#include <gtest/gtest.h>

#include "conezeta/canonical.hpp"
#include "conezeta/cone_integral.hpp"

using namespace conezeta;

namespace {

constexpr unsigned kSeed = 90125;
constexpr int kCases = 200;

PolyRecord mono(IntVec e)
{
    return PolyRecord{true, std::move(e), ""};
}

ConeIntegralData data(std::vector<std::string> vars, IntVec f0, IntVec g0, std::vector<Condition> conds = {})
{
    return ConeIntegralData{std::move(vars), mono(std::move(f0)), mono(std::move(g0)), std::move(conds)};
}

ConeIntegralData heisenberg()
{
    return data({"x", "y", "z"}, {1, 1, 1}, {2, 1, 0}, {{mono({0, 0, 1}), mono({1, 1, 0})}});
}

ConeIntegralData abelian(int d)
{
    std::vector<std::string> vars;
    IntVec f0;
    IntVec g0;
    for (int i = 1; i <= d; ++i) {
        vars.push_back("x" + std::to_string(i));
        f0.push_back(1);
        g0.push_back(d - i);
    }
    return data(vars, f0, g0);
}

struct Pipeline {
    ResolutionData r;
    Decomposition d;
    EdgeConstants e;
    MotivicRational raw;
};

Pipeline run(const ConeIntegralData& cd, const DecomposeOptions& opt = {})
{
    Pipeline p;
    p.r = monomial_resolution(cd);
    p.d = decompose(cone_of(p.r), opt);
    p.e = edge_constants(p.r, p.d);
    p.raw = assemble_geom(p.r, p.d, p.e);
    return p;
}

MotivicRational abelian_geom(int d)
{
    LaurentPoly c(1);
    std::vector<BinomialPower> fs;
    for (int i = 1; i <= d; ++i) {
        c *= one_minus_l_inv(i);
        fs.push_back({1, i, -1});
    }
    return product_form(c, fs);
}

MotivicRational abelian_p(int d)
{
    std::vector<BinomialPower> fs;
    for (int i = 0; i < d; ++i) {
        fs.push_back({1, -i, -1});
    }
    return product_form(LaurentPoly(1), fs);
}

MotivicRational heisenberg_geom()
{
    return product_form(one_minus_l_inv(1) * one_minus_l_inv(2) * one_minus_l_inv(3),
                        {{3, 6, 1}, {1, 3, -1}, {1, 2, -1}, {2, 4, -1}, {2, 3, -1}});
}

MotivicRational heisenberg_p()
{
    return product_form(LaurentPoly(1), {{1, 0, -1}, {1, -1, -1}, {2, -2, -1}, {2, -3, -1}, {3, -3, 1}});
}

/// Brute-force sum of (1-1/p)^m p^-(sum a + g0.a) T^(f0.a) over cone points with
/// every coordinate <= cap, written independently of direct_eval.
std::vector<Rational> naive_sum(const ConeIntegralData& d, int p, int cap, int order)
{
    const std::size_t m = d.m();
    std::vector<Rational> out(static_cast<std::size_t>(order) + 1, Rational(0));
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        total *= static_cast<std::size_t>(cap + 1);
    }
    for (std::size_t code = 0; code < total; ++code) {
        IntVec a(m);
        std::size_t c = code;
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = static_cast<std::int64_t>(c % static_cast<std::size_t>(cap + 1));
            c /= static_cast<std::size_t>(cap + 1);
        }
        bool ok = true;
        for (const auto& cond : d.conditions) {
            std::int64_t lhs = 0;
            std::int64_t rhs = 0;
            for (std::size_t i = 0; i < m; ++i) {
                lhs += cond.f.exponents[i] * a[i];
                rhs += cond.g.exponents[i] * a[i];
            }
            ok = ok && lhs <= rhs;
        }
        if (!ok) {
            continue;
        }
        std::int64_t deg = 0;
        std::int64_t w = 0;
        for (std::size_t i = 0; i < m; ++i) {
            deg += d.f0.exponents[i] * a[i];
            w += (d.g0.exponents[i] + 1) * a[i];
        }
        if (deg <= order) {
            Rational v = 1;
            for (std::int64_t k = 0; k < w; ++k) {
                v /= p;
            }
            out[static_cast<std::size_t>(deg)] += v;
        }
    }
    Rational measure = 1;
    for (std::size_t i = 0; i < m; ++i) {
        measure *= Rational(p - 1, p);
    }
    for (auto& x : out) {
        x *= measure;
    }
    return out;
}

ConeIntegralData random_cone_data(std::mt19937& rng)
{
    std::uniform_int_distribution<int> m_dist(1, 3);
    std::uniform_int_distribution<int> e_dist(0, 3);
    std::uniform_int_distribution<int> f0_dist(1, 3);
    std::uniform_int_distribution<int> c_dist(0, 2);
    const int m = m_dist(rng);
    ConeIntegralData d;
    for (int i = 0; i < m; ++i) {
        d.variables.push_back("x" + std::to_string(i + 1));
    }
    d.f0 = mono(IntVec(static_cast<std::size_t>(m)));
    d.g0 = mono(IntVec(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
        d.f0.exponents[static_cast<std::size_t>(i)] = f0_dist(rng);
        d.g0.exponents[static_cast<std::size_t>(i)] = e_dist(rng);
    }
    for (int k = c_dist(rng); k > 0; --k) {
        Condition c{mono(IntVec(static_cast<std::size_t>(m))), mono(IntVec(static_cast<std::size_t>(m)))};
        for (int i = 0; i < m; ++i) {
            c.f.exponents[static_cast<std::size_t>(i)] = e_dist(rng);
            c.g.exponents[static_cast<std::size_t>(i)] = e_dist(rng);
        }
        d.conditions.push_back(c);
    }
    return d;
}

} // namespace

TEST(MonomialResolution, SingleRay)
{
    const auto r = monomial_resolution(data({"x"}, {1}, {0}));
    ASSERT_EQ(r.t(), 1U);
    EXPECT_EQ(r.divisors[0].nf, IntVec{1});
    EXPECT_EQ(r.divisors[0].ng, IntVec{0});
    EXPECT_EQ(r.divisors[0].nu, 1);
    EXPECT_EQ(r.strata.at({}).cls.coeff, l_minus_one());
    EXPECT_EQ(r.strata.at({1}).cls.coeff, LaurentPoly(1));
    EXPECT_EQ(r.strata.at({1}).euler, 1);
    EXPECT_EQ(r.strata.at({}).euler, 0);
}

TEST(MonomialResolution, Heisenberg)
{
    const auto r = monomial_resolution(heisenberg());
    ASSERT_EQ(r.t(), 3U);
    const IntVec nf0{1, 1, 1}, ng0{2, 1, 0}, nf1{0, 0, 1}, ng1{1, 1, 0};
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_EQ(r.divisors[j].nf[0], nf0[j]);
        EXPECT_EQ(r.divisors[j].ng[0], ng0[j]);
        EXPECT_EQ(r.divisors[j].nf[1], nf1[j]);
        EXPECT_EQ(r.divisors[j].ng[1], ng1[j]);
        EXPECT_EQ(r.divisors[j].nu, 1);
    }
    EXPECT_EQ(r.strata.at({}).cls.coeff, l_minus_one().pow(3));
    EXPECT_EQ(r.strata.at({2}).cls.coeff, l_minus_one().pow(2));
    EXPECT_EQ(r.strata.at({1, 3}).cls.coeff, l_minus_one());
    EXPECT_EQ(r.strata.at({1, 2, 3}).cls.coeff, LaurentPoly(1));
    EXPECT_NO_THROW(r.validate());
}

TEST(MonomialResolution, TwoVariables)
{
    const auto r = monomial_resolution(data({"x1", "x2"}, {1, 1}, {0, 1}));
    EXPECT_EQ(r.divisors[0].nf, IntVec{1});
    EXPECT_EQ(r.divisors[1].nf, IntVec{1});
    EXPECT_EQ(r.divisors[0].ng, IntVec{0});
    EXPECT_EQ(r.divisors[1].ng, IntVec{1});
}

TEST(MonomialResolution, RejectsNonMonomial)
{
    auto d = heisenberg();
    d.conditions[0].g = PolyRecord{false, {}, "x*y + z"};
    EXPECT_THROW(monomial_resolution(d), std::invalid_argument);
}

TEST(ConeOf, Examples)
{
    const auto c = cone_of(monomial_resolution(heisenberg()));
    EXPECT_EQ(c.t, 3);
    ASSERT_EQ(c.inequalities.size(), 1U);
    EXPECT_EQ(c.inequalities[0].f, (IntVec{0, 0, 1}));
    EXPECT_EQ(c.inequalities[0].g, (IntVec{1, 1, 0}));

    const auto free = cone_of(monomial_resolution(abelian(3)));
    EXPECT_TRUE(free.inequalities.empty());
    EXPECT_EQ(extreme_rays(free).size(), 3U);

    const auto pair = data({"a", "b", "c"}, {1, 1, 1}, {0, 0, 0},
                           {{mono({1, 0, 0}), mono({0, 1, 0})}, {mono({0, 1, 0}), mono({1, 0, 0})}});
    const auto rays = extreme_rays(cone_of(monomial_resolution(pair)));
    EXPECT_EQ(rays, (std::vector<IntVec>{{1, 1, 0}, {0, 0, 1}}));
}

TEST(EdgeConstants, Heisenberg)
{
    const auto p = run(heisenberg());
    ASSERT_EQ(p.d.edges.size(), 4U);
    std::map<IntVec, EdgeConstant> by_edge;
    for (std::size_t k = 0; k < p.d.edges.size(); ++k) {
        by_edge[p.d.edges[k]] = p.e[k];
    }
    EXPECT_EQ(by_edge.at({1, 0, 0}), (EdgeConstant{1, 3}));
    EXPECT_EQ(by_edge.at({1, 0, 1}), (EdgeConstant{2, 4}));
    EXPECT_EQ(by_edge.at({0, 1, 0}), (EdgeConstant{1, 2}));
    EXPECT_EQ(by_edge.at({0, 1, 1}), (EdgeConstant{2, 3}));
}

TEST(EdgeConstants, RecomputedFromEdgesRandomized)
{
    std::mt19937 rng(kSeed);
    for (int c = 0; c < kCases; ++c) {
        const auto cd = random_cone_data(rng);
        const auto p = run(cd);
        for (std::size_t k = 0; k < p.d.edges.size(); ++k) {
            std::int64_t A = 0;
            std::int64_t B = 0;
            for (std::size_t j = 0; j < cd.m(); ++j) {
                A += p.d.edges[k][j] * cd.f0.exponents[j];
                B += p.d.edges[k][j] * (cd.g0.exponents[j] + 1);
            }
            EXPECT_EQ(p.e[k], (EdgeConstant{A, B}));
            EXPECT_GE(A, 0);
            EXPECT_GT(B, 0);
        }
    }
}

TEST(AssembleGeom, SingleRay)
{
    const auto p = run(data({"x"}, {1}, {0}));
    const auto expected = product_form(one_minus_l_inv(1), {{1, 1, -1}});
    EXPECT_TRUE(mr_equal(p.raw, expected)) << p.raw.structural_text();
    // Independent: sum_n (1 - 1/L) L^-n T^n at L = 5.
    const auto s = mr_specialize(p.raw, 5).series(6);
    for (int n = 0; n <= 6; ++n) {
        EXPECT_EQ(s[static_cast<std::size_t>(n)], Rational(4, 5) * rational_pow(Rational(5), -n));
    }
}

TEST(AssembleGeom, HeisenbergWithPrefactor)
{
    const auto p = run(heisenberg());
    EXPECT_EQ(p.raw.terms().size(), 12U);
    const MotivicRational geom = MotivicRational(triangular_prefactor(3)) * p.raw;
    EXPECT_TRUE(mr_equal(geom, heisenberg_geom())) << canonical_text(geom);
    EXPECT_EQ(canonical_text(geom), canonical_text(heisenberg_geom()));
}

TEST(AssembleGeom, AbelianWithPrefactor)
{
    for (int d = 1; d <= 3; ++d) {
        const auto p = run(abelian(d));
        const MotivicRational geom = MotivicRational(triangular_prefactor(d)) * p.raw;
        EXPECT_TRUE(mr_equal(geom, abelian_geom(d))) << d;
    }
}

TEST(AssembleGeom, MissingStratum)
{
    auto p = run(heisenberg());
    p.r.strata.erase({1, 2, 3});
    EXPECT_THROW(assemble_geom(p.r, p.d, p.e), std::invalid_argument);
}

TEST(AssembleGeom, SymbolicClassNeedsPointCount)
{
    auto r = monomial_resolution(data({"x"}, {1}, {0}));
    r.strata.at({}).cls = ClassExpr{LaurentPoly(1), "E"};
    const auto d = decompose(cone_of(r));
    const auto z = assemble_geom(r, d, edge_constants(r, d));
    EXPECT_THROW(mr_specialize(z, 3), std::invalid_argument);
    // [E] -> 7 points: 7/3 + (2/3) * T/3 / (1 - T/3).
    const auto v = mr_specialize(z, 3, {{"E", 7}}).series(2);
    EXPECT_EQ(v[0], Rational(7, 3));
    EXPECT_EQ(v[1], Rational(2, 9));
    EXPECT_EQ(v[2], Rational(2, 27));
}

TEST(TriangularPrefactor, Values)
{
    EXPECT_EQ(triangular_prefactor(0), LaurentPoly(1));
    for (int d = 1; d <= 5; ++d) {
        LaurentPoly num(1);
        for (int i = 1; i <= d; ++i) {
            num *= one_minus_l_inv(i);
        }
        EXPECT_EQ(triangular_prefactor(d) * one_minus_l_inv(1).pow(static_cast<unsigned>(d)), num);
    }
}

TEST(ZetaFromGeom, Abelian)
{
    for (int d = 1; d <= 3; ++d) {
        const auto p = run(abelian(d));
        const auto P = zeta_from_geom(MotivicRational(triangular_prefactor(d)) * p.raw, d);
        EXPECT_TRUE(mr_equal(P, abelian_p(d))) << d;
        EXPECT_EQ(canonical_text(P), canonical_text(abelian_p(d)));
    }
}

TEST(ZetaFromGeom, Heisenberg)
{
    const auto p = run(heisenberg());
    const auto P = zeta_from_geom(MotivicRational(triangular_prefactor(3)) * p.raw, 3);
    EXPECT_TRUE(mr_equal(P, heisenberg_p()));
    EXPECT_EQ(canonical_text(P),
              "(1 + L*T + L^2*T^2) / ((1 - L*T)*(1 + L*T)*(1 - T)*(1 - L^3*T^2))");
    // Subalgebra counts of index p, p^2 in the Heisenberg group at p = 2: 3 and 19.
    const auto s = mr_specialize(P, 2).series(2);
    EXPECT_EQ(s[0], 1);
    EXPECT_EQ(s[1], 3);
    EXPECT_EQ(s[2], 19);
}

TEST(ZetaFromGeom, RankZeroIsIdentity)
{
    const auto z = heisenberg_geom();
    const auto same = zeta_from_geom(z, 0);
    EXPECT_TRUE(mr_equal(same, z));
    EXPECT_EQ(same.structural_text(), z.structural_text());
}

TEST(ZetaFromGeom, NonDivisibleCoefficientKeepsFactor)
{
    // 1 / (1 - T L^-1) shifted by 1, divided by (1 - L^-1): coefficient 1 is not divisible.
    const auto P = zeta_from_geom(MotivicRational::inverse_binomial(1, 1), 1);
    const auto expected = product_form(LaurentPoly(1), {{1, 0, -1}, {0, 1, -1}});
    EXPECT_TRUE(mr_equal(P, expected));
}

TEST(DirectEval, SingleRay)
{
    const auto v = direct_eval(data({"x"}, {1}, {0}), 2, 10, 10);
    for (int n = 0; n <= 10; ++n) {
        EXPECT_EQ(v[static_cast<std::size_t>(n)], Rational(1, 2) * rational_pow(Rational(2), -n));
    }
}

TEST(DirectEval, HeisenbergAgainstSeries)
{
    const auto hd = heisenberg();
    const auto p = run(hd);
    const auto exact = mr_specialize(p.raw, 3).series(4);
    const auto approx = direct_eval(hd, 3, 12, 4, 4);
    const Rational tol = rational_pow(Rational(3), -8);
    for (std::size_t n = 0; n <= 4; ++n) {
        const Rational diff = exact[n] - approx[n];
        EXPECT_GE(diff, 0) << n;
        EXPECT_LE(diff, tol) << n;
        EXPECT_LE(diff, truncation_bound(hd, 3, 12)) << n;
    }
}

TEST(DirectEval, Fubini)
{
    const auto two = data({"x", "y"}, {1, 2}, {1, 0});
    const auto x = direct_eval(data({"x"}, {1}, {1}), 3, 8, 6);
    const auto y = direct_eval(data({"y"}, {2}, {0}), 3, 8, 6);
    const auto xy = direct_eval(two, 3, 8, 6);
    for (std::size_t n = 0; n <= 6; ++n) {
        Rational conv = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            conv += x[k] * y[n - k];
        }
        EXPECT_EQ(xy[n], conv) << n;
    }
}

TEST(DirectEval, ThreadsDoNotChangeResult)
{
    const auto hd = heisenberg();
    EXPECT_EQ(direct_eval(hd, 2, 9, 5, 1), direct_eval(hd, 2, 9, 5, 3));
}

TEST(DirectEval, MatchesBruteForceRandomized)
{
    std::mt19937 rng(kSeed + 1);
    for (int c = 0; c < kCases; ++c) {
        const auto cd = random_cone_data(rng);
        EXPECT_EQ(direct_eval(cd, 2, 5, 6), naive_sum(cd, 2, 5, 6));
    }
}

TEST(Properties, DecompositionInvarianceRandomized)
{
    std::mt19937 rng(kSeed + 2);
    for (int c = 0; c < kCases; ++c) {
        const auto cd = random_cone_data(rng);
        const auto base = run(cd);
        const auto rev = run(cd, {RayOrder::Reverse, 0});
        const auto shuf = run(cd, {RayOrder::Shuffled, static_cast<unsigned>(c)});
        EXPECT_TRUE(mr_equal(base.raw, rev.raw)) << c;
        EXPECT_TRUE(mr_equal(base.raw, shuf.raw)) << c;
    }
}

TEST(Properties, DirectEvalAgreesWithAssemblyRandomized)
{
    std::mt19937 rng(kSeed + 3);
    constexpr int order = 4;
    for (int c = 0; c < kCases; ++c) {
        const auto cd = random_cone_data(rng);
        const auto raw = run(cd).raw;
        for (int prime : {2, 3}) {
            const int cap = prime == 2 ? 16 : 10;
            const auto exact = mr_specialize(raw, prime).series(order);
            const auto approx = direct_eval(cd, prime, cap, order);
            const Rational bound = truncation_bound(cd, prime, cap);
            for (std::size_t n = 0; n <= order; ++n) {
                const Rational diff = exact[n] - approx[n];
                EXPECT_GE(diff, 0) << c << " p=" << prime << " n=" << n;
                EXPECT_LE(diff, bound) << c << " p=" << prime << " n=" << n;
            }
        }
    }
}

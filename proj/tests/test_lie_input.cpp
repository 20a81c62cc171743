#include <random>

#include <gtest/gtest.h>

#include "conezeta/lie_algebra.hpp"

using namespace conezeta;

namespace {

constexpr unsigned kSeed = 5521;
constexpr int kCases = 200;

/// [e1,e2] = e3, [e1,e3] = e4.
LieAlgebraZ filiform4()
{
    return LieAlgebraZ{4, {{{1, 2}, {{3, 1}}}, {{1, 3}, {{4, 1}}}}};
}

LieAlgebraZ negated(LieAlgebraZ a)
{
    for (auto& [ij, row] : a.brackets) {
        for (auto& [k, c] : row) {
            c = -c;
        }
    }
    return a;
}

std::vector<std::string> strings(const MonomialityReport& r, const std::vector<std::string>& names)
{
    std::vector<std::string> out;
    for (const auto& c : r.conditions) {
        out.push_back(c.lhs.to_string(names) + " <= " + c.rhs.to_string(names));
    }
    return out;
}

/// Rational inverse times determinant, by Gauss-Jordan over Q.
std::vector<std::vector<Rational>> numeric_adjugate(const std::vector<std::vector<Rational>>& m, Rational& det)
{
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = m[i][j];
        }
        a[i][n + i] = 1;
    }
    det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) {
            ++p;
        }
        if (p == n) {
            det = 0;
            return {};
        }
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        const Rational piv = a[k][k];
        for (auto& x : a[k]) {
            x /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i != k && a[i][k] != 0) {
                const Rational f = a[i][k];
                for (std::size_t j = 0; j < 2 * n; ++j) {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
    }
    std::vector<std::vector<Rational>> adj(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            adj[i][j] = det * a[i][n + j];
        }
    }
    return adj;
}

} // namespace

TEST(LieAlgebra, JacobiOnBuiltIns)
{
    EXPECT_TRUE(abelian_algebra(4).jacobi_holds());
    EXPECT_TRUE(heisenberg_algebra().jacobi_holds());
    EXPECT_TRUE(sl2_algebra().jacobi_holds());
    EXPECT_TRUE(filiform4().jacobi_holds());
}

TEST(LieAlgebra, JacobiViolationRejected)
{
    // [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e1: fails Jacobi.
    const LieAlgebraZ bad{3, {{{1, 2}, {{3, 1}}}, {{2, 3}, {{1, 1}}}, {{1, 3}, {{1, 1}}}}};
    EXPECT_FALSE(bad.jacobi_holds());
    EXPECT_THROW(gen_conditions(bad, ConditionMode::Subalgebra, MatrixShape::Triangular), std::invalid_argument);
}

TEST(LieAlgebra, BracketIsAntisymmetric)
{
    const auto a = sl2_algebra();
    EXPECT_EQ(a.bracket_basis(1, 2), (IntVec{0, 0, 1}));
    EXPECT_EQ(a.bracket_basis(2, 1), (IntVec{0, 0, -1}));
    EXPECT_EQ(a.bracket(IntVec{1, 0, 0}, IntVec{0, 0, 1}), (IntVec{-2, 0, 0}));
    EXPECT_EQ(a.bracket(IntVec{0, 0, 1}, IntVec{1, 0, 0}), (IntVec{2, 0, 0}));
}

TEST(GenConditions, AbelianAllZero)
{
    for (int d = 1; d <= 4; ++d) {
        for (auto mode : {ConditionMode::Subalgebra, ConditionMode::Ideal}) {
            for (auto shape : {MatrixShape::Full, MatrixShape::Triangular}) {
                const auto cs = gen_conditions(abelian_algebra(d), mode, shape);
                EXPECT_EQ(cs.conds.size(), static_cast<std::size_t>(d * d * d));
                for (const auto& c : cs.conds) {
                    EXPECT_TRUE(c.g.is_zero());
                }
            }
        }
    }
    const auto cs = gen_conditions(abelian_algebra(2), ConditionMode::Subalgebra, MatrixShape::Triangular);
    EXPECT_EQ(cs.det_poly.to_string(cs.variables), "m11*m22");
    const auto rep = monomiality_report(gen_conditions(abelian_algebra(3), ConditionMode::Subalgebra, MatrixShape::Triangular));
    EXPECT_TRUE(rep.monomial_reducible);
    EXPECT_TRUE(rep.conditions.empty());
}

TEST(GenConditions, TriangularSupport)
{
    for (const auto& a : {heisenberg_algebra(), sl2_algebra(), filiform4()}) {
        const auto cs = gen_conditions(a, ConditionMode::Subalgebra, MatrixShape::Triangular);
        for (const auto& [r, c] : cs.positions) {
            EXPECT_LE(r, c);
        }
        EXPECT_EQ(cs.variables.size(), static_cast<std::size_t>(a.d * (a.d + 1) / 2));
    }
}

TEST(GenConditions, HeisenbergSingleCondition)
{
    const auto cs = gen_conditions(heisenberg_algebra(), ConditionMode::Subalgebra, MatrixShape::Triangular);
    EXPECT_EQ(cs.det_poly.to_string(cs.variables), "m11*m22*m33");
    const auto rep = monomiality_report(cs);
    EXPECT_TRUE(rep.monomial_reducible);
    EXPECT_EQ(strings(rep, cs.variables), (std::vector<std::string>{"m33 <= m11*m22"}));
}

TEST(GenConditions, Sl2ContainsExpectedConditions)
{
    // a = m11, b = m12, c = m13, x = m22, y = m23, z = m33.
    const auto cs = gen_conditions(sl2_algebra(), ConditionMode::Subalgebra, MatrixShape::Triangular);
    const auto rep = monomiality_report(cs);
    EXPECT_FALSE(rep.monomial_reducible);
    const auto s = strings(rep, cs.variables);
    auto has = [&](const std::string& x) { return std::find(s.begin(), s.end(), x) != s.end(); };
    EXPECT_TRUE(has("m22 <= 4*m12*m33"));                                         // v(x) <= v(4zb)
    EXPECT_TRUE(has("m22*m33 <= m11*m22^2 - 4*m12*m23^2 + 4*m13*m22*m23"));       // v(zx) <= v(ax^2+4cxy-4by^2)
    EXPECT_TRUE(has("m22 <= 4*m12*m23 - 2*m13*m22"));                             // v(x) <= v(4by) given v(cx) >= v(x)
    EXPECT_EQ(s.size(), 3U);
    std::size_t non_monomial = 0;
    for (const auto& c : rep.conditions) {
        non_monomial += c.monomial ? 0 : 1;
    }
    EXPECT_EQ(non_monomial, 2U);
}

TEST(GenConditions, OppositeBracketSameReport)
{
    for (const auto& a : {heisenberg_algebra(), sl2_algebra(), filiform4()}) {
        for (auto mode : {ConditionMode::Subalgebra, ConditionMode::Ideal}) {
            const auto cs = gen_conditions(a, mode, MatrixShape::Triangular);
            const auto op = gen_conditions(negated(a), mode, MatrixShape::Triangular);
            const auto r1 = monomiality_report(cs);
            const auto r2 = monomiality_report(op);
            EXPECT_EQ(r1.monomial_reducible, r2.monomial_reducible);
            EXPECT_EQ(strings(r1, cs.variables), strings(r2, op.variables));
        }
    }
}

TEST(GenConditions, NumericSubstitutionRandomized)
{
    std::mt19937 rng(kSeed);
    std::uniform_int_distribution<int> val(-4, 4);
    const std::vector<LieAlgebraZ> algebras{heisenberg_algebra(), sl2_algebra(), filiform4()};
    for (int c = 0; c < kCases; ++c) {
        const auto& a = algebras[static_cast<std::size_t>(c) % algebras.size()];
        const auto mode = (c / 3) % 2 == 0 ? ConditionMode::Subalgebra : ConditionMode::Ideal;
        const auto shape = (c / 6) % 2 == 0 ? MatrixShape::Triangular : MatrixShape::Full;
        const auto cs = gen_conditions(a, mode, shape);
        std::vector<Integer> x(cs.variables.size());
        const auto n = static_cast<std::size_t>(a.d);
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t v = 0; v < x.size(); ++v) {
            x[v] = val(rng);
            m[static_cast<std::size_t>(cs.positions[v].first - 1)][static_cast<std::size_t>(cs.positions[v].second - 1)] = x[v];
        }
        Rational det;
        const auto adj = numeric_adjugate(m, det);
        ASSERT_EQ(Rational(cs.det_poly.evaluate(x)), det);
        if (det == 0) {
            continue;
        }
        for (const auto& g : cs.conds) {
            std::vector<Rational> u(m[static_cast<std::size_t>(g.i - 1)]);
            std::vector<Rational> w(n, Rational(0));
            if (mode == ConditionMode::Subalgebra) {
                w = m[static_cast<std::size_t>(g.j - 1)];
            } else {
                w[static_cast<std::size_t>(g.j - 1)] = 1;
            }
            const auto br = a.bracket(u, w);
            Rational expected = 0;
            for (std::size_t l = 0; l < n; ++l) {
                expected += br[l] * adj[l][static_cast<std::size_t>(g.k - 1)];
            }
            EXPECT_EQ(Rational(g.g.evaluate(x)), expected) << c << " " << g.i << g.j << g.k;
        }
    }
}

TEST(Adjugate, BareissMatchesCofactorSymbolic)
{
    for (std::size_t n = 1; n <= 4; ++n) {
        const std::size_t nv = n * n;
        PolyMatrix m(n, std::vector<MPoly>(n, MPoly(nv)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] = MPoly::variable(nv, i * n + j);
            }
        }
        const auto [det, adj] = detail::adjugate_bareiss(m, nv);
        EXPECT_EQ(det, detail::determinant_cofactor(m, nv));
        EXPECT_EQ(adj, detail::adjugate_cofactor(m, nv));
    }
}

TEST(Adjugate, ProductIsDeterminantRandomized)
{
    std::mt19937 rng(kSeed + 1);
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int c = 0; c < kCases; ++c) {
        const auto n = static_cast<std::size_t>(dim(rng));
        PolyMatrix m(n, std::vector<MPoly>(n, MPoly(1)));
        for (auto& row : m) {
            for (auto& x : row) {
                // Entries mix a constant and a multiple of one variable to stay generic.
                x = MPoly::constant(1, val(rng)) + MPoly::constant(1, val(rng)) * MPoly::variable(1, 0);
            }
        }
        std::pair<MPoly, PolyMatrix> res;
        try {
            res = determinant_and_adjugate(m, 1);
        } catch (const std::domain_error&) {
            EXPECT_TRUE(detail::determinant_cofactor(m, 1).is_zero());
            continue;
        }
        const auto& [det, adj] = res;
        if (n <= 4) {
            try {
                const auto [det2, adj2] = detail::adjugate_bareiss(m, 1);
                EXPECT_EQ(det, det2);
                EXPECT_EQ(adj, adj2);
            } catch (const std::domain_error&) {
                EXPECT_TRUE(det.is_zero());
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                MPoly s(1);
                for (std::size_t k = 0; k < n; ++k) {
                    s += m[i][k] * adj[k][j];
                }
                EXPECT_EQ(s, i == j ? det : MPoly(1)) << c;
            }
        }
    }
}

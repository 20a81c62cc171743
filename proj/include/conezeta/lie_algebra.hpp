#ifndef CONEZETA_LIE_ALGEBRA_HPP
#define CONEZETA_LIE_ALGEBRA_HPP

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "rational.hpp"

namespace conezeta {

/// A Lie ring on Z^d given by c_ij^k for i < j (1-based).
struct LieAlgebraZ {
    int d = 0;
    std::map<std::pair<int, int>, std::map<int, std::int64_t>> brackets;

    friend bool operator==(const LieAlgebraZ&, const LieAlgebraZ&) = default;

    /// Coordinates of [e_i, e_j], 1-based indices in any order.
    IntVec bracket_basis(int i, int j) const
    {
        IntVec v(static_cast<std::size_t>(d), 0);
        if (i == j) {
            return v;
        }
        const int sign = i < j ? 1 : -1;
        auto it = brackets.find({std::min(i, j), std::max(i, j)});
        if (it != brackets.end()) {
            for (const auto& [k, c] : it->second) {
                v[static_cast<std::size_t>(k - 1)] = sign * c;
            }
        }
        return v;
    }

    template <class T>
    std::vector<T> bracket(const std::vector<T>& x, const std::vector<T>& y) const
    {
        std::vector<T> out(static_cast<std::size_t>(d), T(0));
        for (const auto& [ij, row] : brackets) {
            const auto i = static_cast<std::size_t>(ij.first - 1);
            const auto j = static_cast<std::size_t>(ij.second - 1);
            const T w = x[i] * y[j] - x[j] * y[i];
            if (w == 0) {
                continue;
            }
            for (const auto& [k, c] : row) {
                out[static_cast<std::size_t>(k - 1)] += w * c;
            }
        }
        return out;
    }

    std::vector<MPoly> bracket(const std::vector<MPoly>& x, const std::vector<MPoly>& y, std::size_t nvars) const
    {
        std::vector<MPoly> out(static_cast<std::size_t>(d), MPoly(nvars));
        for (const auto& [ij, row] : brackets) {
            const auto i = static_cast<std::size_t>(ij.first - 1);
            const auto j = static_cast<std::size_t>(ij.second - 1);
            const MPoly w = x[i] * y[j] - x[j] * y[i];
            if (w.is_zero()) {
                continue;
            }
            for (const auto& [k, c] : row) {
                out[static_cast<std::size_t>(k - 1)] += w * MPoly::constant(nvars, Integer(static_cast<long>(c)));
            }
        }
        return out;
    }

    void validate() const
    {
        if (d < 1) {
            throw std::invalid_argument("Lie algebra rank must be positive");
        }
        for (const auto& [ij, row] : brackets) {
            if (ij.first < 1 || ij.second > d || ij.first >= ij.second) {
                throw std::invalid_argument("bracket keys need 1 <= i < j <= d");
            }
            for (const auto& [k, c] : row) {
                if (k < 1 || k > d) {
                    throw std::invalid_argument("bracket component index out of range");
                }
            }
        }
    }

    bool jacobi_holds() const
    {
        for (int i = 1; i <= d; ++i) {
            for (int j = i + 1; j <= d; ++j) {
                for (int k = j + 1; k <= d; ++k) {
                    auto e = [this](int n) {
                        IntVec v(static_cast<std::size_t>(d), 0);
                        v[static_cast<std::size_t>(n - 1)] = 1;
                        return v;
                    };
                    IntVec total(static_cast<std::size_t>(d), 0);
                    for (auto [a, b, c] : {std::tuple{i, j, k}, std::tuple{j, k, i}, std::tuple{k, i, j}}) {
                        const IntVec t = bracket(bracket_basis(a, b), e(c));
                        for (std::size_t l = 0; l < total.size(); ++l) {
                            total[l] += t[l];
                        }
                    }
                    if (std::any_of(total.begin(), total.end(), [](std::int64_t x) { return x != 0; })) {
                        return false;
                    }
                }
            }
        }
        return true;
    }
};

inline LieAlgebraZ abelian_algebra(int d)
{
    return LieAlgebraZ{d, {}};
}

inline LieAlgebraZ heisenberg_algebra()
{
    return LieAlgebraZ{3, {{{1, 2}, {{3, 1}}}}};
}

/// Basis E, F, H with [E,F] = H, [E,H] = -2E, [F,H] = 2F.
inline LieAlgebraZ sl2_algebra()
{
    return LieAlgebraZ{3, {{{1, 2}, {{3, 1}}}, {{1, 3}, {{1, -2}}}, {{2, 3}, {{2, 2}}}}};
}

enum class ConditionMode { Subalgebra, Ideal };
enum class MatrixShape { Full, Triangular };

struct GeneratedCondition {
    int i = 0;
    int j = 0;
    int k = 0;
    MPoly g;
};

/// ord det(M) <= ord g_ijk(M) for all i, j, k.
struct ConditionSet {
    std::vector<std::string> variables;
    /// (row, column) of each variable, 1-based.
    std::vector<std::pair<int, int>> positions;
    MPoly det_poly;
    std::vector<GeneratedCondition> conds;
};

using PolyMatrix = std::vector<std::vector<MPoly>>;

namespace detail {

inline MPoly determinant_cofactor(const PolyMatrix& m, std::size_t nvars)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return MPoly::constant(nvars, 1);
    }
    if (n == 1) {
        return m[0][0];
    }
    MPoly total(nvars);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) {
            continue;
        }
        PolyMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<MPoly> row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != c) {
                    row.push_back(m[r][k]);
                }
            }
            minor.push_back(row);
        }
        MPoly t = m[0][c] * determinant_cofactor(minor, nvars);
        total += c % 2 == 0 ? t : -t;
    }
    return total;
}

inline PolyMatrix adjugate_cofactor(const PolyMatrix& m, std::size_t nvars)
{
    const std::size_t n = m.size();
    PolyMatrix adj(n, std::vector<MPoly>(n, MPoly(nvars)));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            PolyMatrix minor;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == r) {
                    continue;
                }
                std::vector<MPoly> row;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j != c) {
                        row.push_back(m[i][j]);
                    }
                }
                minor.push_back(row);
            }
            MPoly t = determinant_cofactor(minor, nvars);
            adj[c][r] = (r + c) % 2 == 0 ? t : -t;
        }
    }
    return adj;
}

/// Fraction-free Gauss-Jordan on [M | I]; returns (det, adj).
inline std::pair<MPoly, PolyMatrix> adjugate_bareiss(const PolyMatrix& m, std::size_t nvars)
{
    const std::size_t n = m.size();
    PolyMatrix a(n, std::vector<MPoly>(2 * n, MPoly(nvars)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = m[i][j];
        }
        a[i][n + i] = MPoly::constant(nvars, 1);
    }
    MPoly prev = MPoly::constant(nvars, 1);
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k].is_zero()) {
            ++p;
        }
        if (p == n) {
            throw std::domain_error("singular matrix in adjugate computation");
        }
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) {
                continue;
            }
            for (std::size_t j = 0; j < 2 * n; ++j) {
                if (j == k) {
                    continue;
                }
                MPoly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                auto q = num.divide_exact(prev);
                if (!q) {
                    throw std::logic_error("inexact Bareiss division");
                }
                a[i][j] = *q;
            }
            a[i][k] = MPoly(nvars);
        }
        prev = a[k][k];
    }
    const MPoly det = prev;
    PolyMatrix adj(n, std::vector<MPoly>(n, MPoly(nvars)));
    for (std::size_t i = 0; i < n; ++i) {
        if (!(a[i][i] == det)) {
            throw std::logic_error("Bareiss diagonal mismatch");
        }
        for (std::size_t j = 0; j < n; ++j) {
            adj[i][j] = sign > 0 ? a[i][n + j] : -a[i][n + j];
        }
    }
    return {sign > 0 ? det : -det, adj};
}

} // namespace detail

/// (det, adj) by cofactor expansion for d <= 4, fraction-free elimination above.
inline std::pair<MPoly, PolyMatrix> determinant_and_adjugate(const PolyMatrix& m, std::size_t nvars)
{
    if (m.size() <= 4) {
        return {detail::determinant_cofactor(m, nvars), detail::adjugate_cofactor(m, nvars)};
    }
    return detail::adjugate_bareiss(m, nvars);
}

inline ConditionSet gen_conditions(const LieAlgebraZ& a, ConditionMode mode, MatrixShape shape)
{
    a.validate();
    if (!a.jacobi_holds()) {
        throw std::invalid_argument("structure constants violate the Jacobi identity");
    }
    const int d = a.d;
    const auto n = static_cast<std::size_t>(d);
    ConditionSet cs;
    for (int r = 1; r <= d; ++r) {
        for (int c = shape == MatrixShape::Triangular ? r : 1; c <= d; ++c) {
            cs.positions.push_back({r, c});
            cs.variables.push_back(d < 10 ? "m" + std::to_string(r) + std::to_string(c)
                                          : "m" + std::to_string(r) + "_" + std::to_string(c));
        }
    }
    const std::size_t nv = cs.variables.size();
    PolyMatrix M(n, std::vector<MPoly>(n, MPoly(nv)));
    for (std::size_t v = 0; v < nv; ++v) {
        M[static_cast<std::size_t>(cs.positions[v].first - 1)][static_cast<std::size_t>(cs.positions[v].second - 1)] =
            MPoly::variable(nv, v);
    }
    auto [det, adj] = determinant_and_adjugate(M, nv);
    cs.det_poly = det;

    auto times_adj = [&](const std::vector<MPoly>& row) {
        std::vector<MPoly> out(n, MPoly(nv));
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = 0; l < n; ++l) {
                if (!row[l].is_zero() && !adj[l][k].is_zero()) {
                    out[k] += row[l] * adj[l][k];
                }
            }
        }
        return out;
    };

    for (int i = 1; i <= d; ++i) {
        for (int j = 1; j <= d; ++j) {
            std::vector<MPoly> br;
            if (mode == ConditionMode::Subalgebra) {
                br = a.bracket(M[static_cast<std::size_t>(i - 1)], M[static_cast<std::size_t>(j - 1)], nv);
            } else {
                std::vector<MPoly> e(n, MPoly(nv));
                e[static_cast<std::size_t>(j - 1)] = MPoly::constant(nv, 1);
                br = a.bracket(M[static_cast<std::size_t>(i - 1)], e, nv);
            }
            const auto g = times_adj(br);
            for (int k = 1; k <= d; ++k) {
                cs.conds.push_back({i, j, k, g[static_cast<std::size_t>(k - 1)]});
            }
        }
    }
    return cs;
}

/// ord lhs <= ord rhs after removing the monomial factor shared with det.
struct ReducedCondition {
    int i = 0;
    int j = 0;
    int k = 0;
    MPoly lhs;
    MPoly rhs;
    bool monomial = false;
};

struct MonomialityReport {
    std::vector<ReducedCondition> conditions;
    bool monomial_reducible = true;

    std::string to_string(const std::vector<std::string>& names) const
    {
        std::string out = monomial_reducible ? "monomial-reducible" : "not monomial-reducible";
        out += ", " + std::to_string(conditions.size()) + " condition(s)\n";
        for (const auto& c : conditions) {
            out += "  ord(" + c.lhs.to_string(names) + ") <= ord(" + c.rhs.to_string(names) + ")" +
                   (c.monomial ? "" : "  [not monomial]") + "\n";
        }
        return out;
    }
};

inline MonomialityReport monomiality_report(const ConditionSet& cs)
{
    MonomialityReport rep;
    const Exponents det_gcd = cs.det_poly.monomial_gcd();
    std::set<std::pair<std::map<Exponents, Integer>, std::map<Exponents, Integer>>> seen;
    for (const auto& c : cs.conds) {
        if (c.g.is_zero()) {
            continue;
        }
        Exponents shared = c.g.monomial_gcd();
        for (std::size_t v = 0; v < shared.size(); ++v) {
            shared[v] = std::min(shared[v], det_gcd[v]);
        }
        MPoly lhs = cs.det_poly.divide_monomial(shared);
        MPoly rhs = c.g.divide_monomial(shared);
        if (rhs.terms().rbegin()->second < 0) {
            rhs = -rhs;
        }
        if (lhs.terms().rbegin()->second < 0) {
            lhs = -lhs;
        }
        if (lhs.size() == 1 && abs(lhs.terms().begin()->second) == 1) {
            const Exponents& le = lhs.terms().begin()->first;
            const Exponents rg = rhs.monomial_gcd();
            bool divides = true;
            for (std::size_t v = 0; v < le.size(); ++v) {
                divides = divides && le[v] <= rg[v];
            }
            if (divides) {
                continue;
            }
        }
        if (!seen.insert({lhs.terms(), rhs.terms()}).second) {
            continue;
        }
        ReducedCondition r{c.i, c.j, c.k, lhs, rhs, lhs.size() == 1 && rhs.size() == 1};
        rep.monomial_reducible = rep.monomial_reducible && r.monomial;
        rep.conditions.push_back(std::move(r));
    }
    return rep;
}

} // namespace conezeta

#endif // CONEZETA_LIE_ALGEBRA_HPP

#ifndef CONEZETA_INTEGER_LINALG_HPP
#define CONEZETA_INTEGER_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace conezeta {

using IntMatrix = std::vector<IntVec>;
using RatMatrix = std::vector<std::vector<Rational>>;
using BigMatrix = std::vector<std::vector<Integer>>;

/// Row echelon form in place over Q; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(RatMatrix& m, std::size_t ncols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == m.size()) {
            continue;
        }
        std::swap(m[row], m[pivot]);
        const Rational inv = 1 / m[row][col];
        for (auto& x : m[row]) {
            x *= inv;
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != row && m[r][col] != 0) {
                const Rational f = m[r][col];
                for (std::size_t c = col; c < m[r].size(); ++c) {
                    m[r][c] -= f * m[row][c];
                }
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r;
    for (const auto& row : m) {
        std::vector<Rational> v;
        for (auto x : row) {
            v.emplace_back(static_cast<long>(x));
        }
        r.push_back(std::move(v));
    }
    return r;
}

inline std::size_t rank(const IntMatrix& rows)
{
    if (rows.empty()) {
        return 0;
    }
    RatMatrix m = to_rational(rows);
    return row_reduce(m, rows.front().size()).size();
}

/// Coefficients c with sum_i c_i * rows[i] = target, if any. Rows must be
/// linearly independent, so the solution is unique.
inline std::optional<std::vector<Rational>> solve_combination(const IntMatrix& rows, const IntVec& target)
{
    const std::size_t k = rows.size();
    const std::size_t t = target.size();
    // Equations: one per coordinate, unknowns c_0..c_{k-1}.
    RatMatrix m(t, std::vector<Rational>(k + 1));
    for (std::size_t j = 0; j < t; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            m[j][i] = Rational(static_cast<long>(rows[i][j]));
        }
        m[j][k] = Rational(static_cast<long>(target[j]));
    }
    const auto pivots = row_reduce(m, k + 1);
    if (!pivots.empty() && pivots.back() == k) {
        return std::nullopt;
    }
    if (pivots.size() != k) {
        throw std::invalid_argument("solve_combination: rows are linearly dependent");
    }
    std::vector<Rational> c(k);
    for (std::size_t r = 0; r < k; ++r) {
        c[pivots[r]] = m[r][k];
    }
    return c;
}

/// Inverse of a square nonsingular rational matrix.
inline RatMatrix inverse(const RatMatrix& a)
{
    const std::size_t n = a.size();
    RatMatrix m(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = a[i][j];
        }
        m[i][n + i] = 1;
    }
    if (row_reduce(m, n).size() != n) {
        throw std::domain_error("singular matrix");
    }
    RatMatrix inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv[i][j] = m[i][n + j];
        }
    }
    return inv;
}

/// Smith normal form of a k x t integer matrix G of rank k: P*G*Q = diag(d),
/// d_1 | d_2 | ..., with Q unimodular. Only Q^-1 is kept; its first k rows
/// are a basis of the saturated lattice Z^t intersected with the row span of G.
struct SmithForm {
    std::vector<Integer> divisors;
    BigMatrix q_inverse;
};

inline SmithForm smith_normal_form(const IntMatrix& g)
{
    const std::size_t k = g.size();
    const std::size_t t = k == 0 ? 0 : g.front().size();
    BigMatrix a(k, std::vector<Integer>(t));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < t; ++j) {
            a[i][j] = Integer(static_cast<long>(g[i][j]));
        }
    }
    BigMatrix qi(t, std::vector<Integer>(t, Integer(0)));
    for (std::size_t i = 0; i < t; ++i) {
        qi[i][i] = 1;
    }
    // Column ops on a are mirrored as inverse row ops on qi.
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : a) {
            std::swap(row[i], row[j]);
        }
        std::swap(qi[i], qi[j]);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Integer& c) {
        for (auto& row : a) {
            row[dst] += c * row[src];
        }
        for (std::size_t x = 0; x < t; ++x) {
            qi[src][x] -= c * qi[dst][x];
        }
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Integer& c) {
        for (std::size_t x = 0; x < t; ++x) {
            a[dst][x] += c * a[src][x];
        }
    };
    SmithForm out;
    bool exhausted = false;
    for (std::size_t s = 0; s < std::min(k, t) && !exhausted; ++s) {
        for (;;) {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            std::size_t pr = k, pc = t;
            for (std::size_t i = s; i < k; ++i) {
                for (std::size_t j = s; j < t; ++j) {
                    if (a[i][j] != 0 && (pr == k || abs(a[i][j]) < abs(a[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
                }
            }
            if (pr == k) {
                exhausted = true;
                break;
            }
            std::swap(a[s], a[pr]);
            if (pc != s) {
                swap_cols(s, pc);
            }
            bool clean = true;
            for (std::size_t i = s + 1; i < k; ++i) {
                if (a[i][s] != 0) {
                    Integer q = a[i][s] / a[s][s];
                    add_row(i, s, -q);
                    clean = clean && a[i][s] == 0;
                }
            }
            for (std::size_t j = s + 1; j < t; ++j) {
                if (a[s][j] != 0) {
                    Integer q = a[s][j] / a[s][s];
                    add_col(j, s, -q);
                    clean = clean && a[s][j] == 0;
                }
            }
            if (!clean) {
                continue;
            }
            std::size_t bad = k;
            for (std::size_t i = s + 1; i < k && bad == k; ++i) {
                for (std::size_t j = s + 1; j < t; ++j) {
                    if (a[i][j] % a[s][s] != 0) {
                        bad = i;
                        break;
                    }
                }
            }
            if (bad == k) {
                break;
            }
            add_row(s, bad, Integer(1));
        }
        if (exhausted) {
            break;
        }
        out.divisors.push_back(abs(a[s][s]));
    }
    out.q_inverse = std::move(qi);
    return out;
}

/// True when the rows generate a saturated sublattice of Z^t, i.e. every
/// elementary divisor is 1.
inline bool is_unimodular(const IntMatrix& rows)
{
    const SmithForm f = smith_normal_form(rows);
    if (f.divisors.size() != rows.size()) {
        return false;
    }
    for (const auto& d : f.divisors) {
        if (d != 1) {
            return false;
        }
    }
    return true;
}

} // namespace conezeta

#endif // CONEZETA_INTEGER_LINALG_HPP

#ifndef CONEZETA_CONE_HPP
#define CONEZETA_CONE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "integer_linalg.hpp"
#include "rational.hpp"

namespace conezeta {

/// Inequality sum_j f[j]*x_j <= sum_j g[j]*x_j.
struct ConeInequality {
    IntVec f;
    IntVec g;

    friend bool operator==(const ConeInequality&, const ConeInequality&) = default;
};

/// The cone in R^t cut out by the inequalities together with x >= 0.
struct ConeSpec {
    int t = 0;
    std::vector<ConeInequality> inequalities;

    void validate() const
    {
        if (t < 0) {
            throw std::invalid_argument("cone dimension must be nonnegative");
        }
        for (const auto& q : inequalities) {
            if (q.f.size() != static_cast<std::size_t>(t) || q.g.size() != static_cast<std::size_t>(t)) {
                throw std::invalid_argument("inequality vector length differs from t");
            }
            for (std::size_t j = 0; j < q.f.size(); ++j) {
                if (q.f[j] < 0 || q.g[j] < 0) {
                    throw std::invalid_argument("inequality exponents must be nonnegative");
                }
            }
        }
    }

    /// Normals h with h.x >= 0, nonnegativity first.
    IntMatrix normals() const
    {
        IntMatrix h;
        for (int j = 0; j < t; ++j) {
            IntVec e(static_cast<std::size_t>(t), 0);
            e[static_cast<std::size_t>(j)] = 1;
            h.push_back(e);
        }
        for (const auto& q : inequalities) {
            IntVec v(static_cast<std::size_t>(t));
            for (std::size_t j = 0; j < v.size(); ++j) {
                v[j] = q.g[j] - q.f[j];
            }
            h.push_back(v);
        }
        return h;
    }

    bool contains(const IntVec& x) const
    {
        for (const auto& h : normals()) {
            if (dot(h, x) < 0) {
                return false;
            }
        }
        return true;
    }
};

/// Extreme rays as primitive integer vectors, sorted in descending
/// lexicographic order. Double description method, starting from the
/// coordinate rays of the orthant and adding one inequality at a time.
inline std::vector<IntVec> extreme_rays(const ConeSpec& c)
{
    c.validate();
    const std::size_t t = static_cast<std::size_t>(c.t);
    const IntMatrix normals = c.normals();
    struct Ray {
        IntVec v;
        std::vector<bool> zero;
    };
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < t; ++j) {
        Ray r;
        r.v.assign(t, 0);
        r.v[j] = 1;
        for (std::size_t i = 0; i < t; ++i) {
            r.zero.push_back(i != j);
        }
        rays.push_back(std::move(r));
    }
    for (std::size_t n = t; n < normals.size(); ++n) {
        const IntVec& h = normals[n];
        std::vector<Ray> pos, neg, next;
        for (auto& r : rays) {
            const std::int64_t s = dot(h, r.v);
            r.zero.push_back(s == 0);
            if (s > 0) {
                pos.push_back(r);
            } else if (s < 0) {
                neg.push_back(r);
            }
            if (s >= 0) {
                next.push_back(r);
            }
        }
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                std::vector<bool> common(p.zero.size());
                for (std::size_t i = 0; i + 1 < p.zero.size(); ++i) {
                    common[i] = p.zero[i] && q.zero[i];
                }
                // Combinatorial adjacency: no third ray is tight on all common constraints.
                bool adjacent = true;
                for (const auto& r : rays) {
                    if (r.v == p.v || r.v == q.v) {
                        continue;
                    }
                    bool covers = true;
                    for (std::size_t i = 0; i + 1 < p.zero.size() && covers; ++i) {
                        if (common[i] && !r.zero[i]) {
                            covers = false;
                        }
                    }
                    if (covers) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) {
                    continue;
                }
                const std::int64_t hp = dot(h, p.v);
                const std::int64_t hq = dot(h, q.v);
                Ray r;
                r.v.resize(t);
                for (std::size_t j = 0; j < t; ++j) {
                    r.v[j] = checked_add(checked_mul(hp, q.v[j]), checked_mul(-hq, p.v[j]));
                }
                r.v = make_primitive(r.v);
                for (std::size_t i = 0; i <= n; ++i) {
                    r.zero.push_back(dot(normals[i], r.v) == 0);
                }
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
    }
    std::vector<IntVec> out;
    for (const auto& r : rays) {
        out.push_back(r.v);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// An open simplicial piece: the relative interior of the cone spanned by the
/// edges M (1-based edge indices). I (1-based coordinates) is the union of
/// the supports of those edges.
struct Piece {
    std::vector<int> M;
    std::vector<int> I;

    friend bool operator==(const Piece&, const Piece&) = default;
};

struct Decomposition {
    int t = 0;
    /// Extreme rays first (descending lexicographic), then rays added by subdivision.
    std::vector<IntVec> edges;
    std::size_t extreme_count = 0;
    /// Origin first, then by dimension, then by edge indices.
    std::vector<Piece> pieces;
    /// Maximal cones of the fan, as sorted 1-based edge index lists.
    std::vector<std::vector<int>> maximal_cones;

    /// Coordinates on a maximal cone: lambda = x restricted to `columns`, times `inverse`.
    struct Chart {
        std::vector<std::size_t> columns;
        RatMatrix inverse;
    };
    std::vector<Chart> charts;

    IntMatrix generators(const std::vector<int>& m) const
    {
        IntMatrix g;
        for (int i : m) {
            g.push_back(edges.at(static_cast<std::size_t>(i - 1)));
        }
        return g;
    }
};

enum class RayOrder { Lexicographic, Reverse, Shuffled };

/// Controls the order in which rays are placed; every choice yields a valid
/// decomposition of the same cone.
struct DecomposeOptions {
    RayOrder order = RayOrder::Lexicographic;
    unsigned seed = 0;
};

namespace detail {

using Cone = std::vector<int>;

inline Decomposition::Chart make_chart(const IntMatrix& g)
{
    Decomposition::Chart chart;
    if (g.empty()) {
        return chart;
    }
    // Pivot columns pick k coordinates on which G is invertible.
    RatMatrix m = to_rational(g);
    chart.columns = row_reduce(m, g.front().size());
    RatMatrix square(g.size(), std::vector<Rational>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t c = 0; c < chart.columns.size(); ++c) {
            square[i][c] = Rational(static_cast<long>(g[i][chart.columns[c]]));
        }
    }
    chart.inverse = inverse(square);
    return chart;
}

inline std::vector<Cone> facets_of(const Cone& c)
{
    std::vector<Cone> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        Cone f;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j != i) {
                f.push_back(c[j]);
            }
        }
        out.push_back(f);
    }
    return out;
}

/// Placing triangulation of the cone over `order` (0-based ray indices).
inline std::vector<Cone> placing_triangulation(const std::vector<IntVec>& rays, const std::vector<int>& order)
{
    std::vector<Cone> cones;
    if (order.empty()) {
        return cones;
    }
    cones.push_back({order.front()});
    std::size_t dim = 1;
    IntMatrix span{rays[static_cast<std::size_t>(order.front())]};
    for (std::size_t step = 1; step < order.size(); ++step) {
        const int v = order[step];
        const IntVec& x = rays[static_cast<std::size_t>(v)];
        IntMatrix extended = span;
        extended.push_back(x);
        if (rank(extended) > dim) {
            for (auto& c : cones) {
                c.push_back(v);
                std::sort(c.begin(), c.end());
            }
            span = std::move(extended);
            ++dim;
            continue;
        }
        std::map<Cone, int> facet_count;
        for (const auto& c : cones) {
            for (const auto& f : facets_of(c)) {
                facet_count[f] += 1;
            }
        }
        std::vector<Cone> added;
        for (const auto& c : cones) {
            IntMatrix g;
            for (int i : c) {
                g.push_back(rays[static_cast<std::size_t>(i)]);
            }
            const auto lambda = *solve_combination(g, x);
            for (std::size_t i = 0; i < c.size(); ++i) {
                Cone f;
                for (std::size_t j = 0; j < c.size(); ++j) {
                    if (j != i) {
                        f.push_back(c[j]);
                    }
                }
                if (facet_count[f] == 1 && lambda[i] < 0) {
                    f.push_back(v);
                    std::sort(f.begin(), f.end());
                    added.push_back(f);
                }
            }
        }
        cones.insert(cones.end(), added.begin(), added.end());
    }
    return cones;
}

/// Nonzero lattice point of the half-open parallelepiped of the generators
/// with the least coefficient sum (ties: lexicographically least point),
/// together with its coefficients. Nullopt if the generators are unimodular.
inline std::optional<std::pair<IntVec, std::vector<Rational>>> parallelepiped_witness(const IntMatrix& g)
{
    const std::size_t k = g.size();
    const std::size_t t = g.front().size();
    const SmithForm snf = smith_normal_form(g);
    Integer index = 1;
    for (const auto& d : snf.divisors) {
        index *= d;
    }
    if (index == 1) {
        return std::nullopt;
    }
    IntMatrix w;
    for (std::size_t i = 0; i < k; ++i) {
        IntVec row(t);
        for (std::size_t j = 0; j < t; ++j) {
            row[j] = to_int64(snf.q_inverse[i][j]);
        }
        w.push_back(row);
    }
    // Generators in the saturated basis w, then inverted.
    RatMatrix coords;
    for (const auto& gi : g) {
        coords.push_back(*solve_combination(w, gi));
    }
    const RatMatrix cinv = inverse(coords);
    std::optional<std::pair<IntVec, std::vector<Rational>>> best;
    Rational best_sum;
    std::vector<Integer> y(k, Integer(0));
    for (;;) {
        std::vector<Rational> lambda(k, Rational(0));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                lambda[j] += Rational(y[i]) * cinv[i][j];
            }
        }
        Rational sum = 0;
        for (auto& l : lambda) {
            Integer fl;
            mpz_fdiv_q(fl.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
            l -= Rational(fl);
            sum += l;
        }
        if (sum != 0) {
            IntVec point(t, 0);
            for (std::size_t j = 0; j < t; ++j) {
                Rational coord = 0;
                for (std::size_t i = 0; i < k; ++i) {
                    coord += lambda[i] * Rational(static_cast<long>(g[i][j]));
                }
                if (coord.get_den() != 1) {
                    throw std::logic_error("parallelepiped point is not integral");
                }
                point[j] = to_int64(coord.get_num());
            }
            if (!best || sum < best_sum || (sum == best_sum && point < best->first)) {
                best = std::make_pair(point, lambda);
                best_sum = sum;
            }
        }
        std::size_t i = 0;
        while (i < k) {
            y[i] += 1;
            if (y[i] < snf.divisors[i]) {
                break;
            }
            y[i] = 0;
            ++i;
        }
        if (i == k) {
            break;
        }
    }
    return best;
}

} // namespace detail

/// Fan of unimodular simplicial cones covering the cone, and all of its
/// faces' relative interiors as pieces.
inline Decomposition decompose(const ConeSpec& c, const DecomposeOptions& options = {})
{
    Decomposition d;
    d.t = c.t;
    d.edges = extreme_rays(c);
    d.extreme_count = d.edges.size();
    std::vector<int> order(d.edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<int>(i);
    }
    if (options.order == RayOrder::Reverse) {
        std::reverse(order.begin(), order.end());
    } else if (options.order == RayOrder::Shuffled) {
        std::mt19937 rng(options.seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    std::vector<detail::Cone> cones = detail::placing_triangulation(d.edges, order);
    for (;;) {
        std::sort(cones.begin(), cones.end());
        std::optional<std::pair<IntVec, std::vector<Rational>>> witness;
        detail::Cone source;
        for (const auto& cone : cones) {
            IntMatrix g;
            for (int i : cone) {
                g.push_back(d.edges[static_cast<std::size_t>(i)]);
            }
            witness = detail::parallelepiped_witness(g);
            if (witness) {
                source = cone;
                break;
            }
        }
        if (!witness) {
            break;
        }
        const int added = static_cast<int>(d.edges.size());
        d.edges.push_back(witness->first);
        detail::Cone face;
        for (std::size_t i = 0; i < source.size(); ++i) {
            if (witness->second[i] != 0) {
                face.push_back(source[i]);
            }
        }
        std::vector<detail::Cone> next;
        for (const auto& cone : cones) {
            if (!std::includes(cone.begin(), cone.end(), face.begin(), face.end())) {
                next.push_back(cone);
                continue;
            }
            for (int u : face) {
                detail::Cone replaced;
                for (int x : cone) {
                    if (x != u) {
                        replaced.push_back(x);
                    }
                }
                replaced.push_back(added);
                std::sort(replaced.begin(), replaced.end());
                next.push_back(replaced);
            }
        }
        cones = std::move(next);
    }
    std::set<detail::Cone> faces;
    for (auto& cone : cones) {
        detail::Cone one_based;
        for (int i : cone) {
            one_based.push_back(i + 1);
        }
        d.maximal_cones.push_back(one_based);
        d.charts.push_back(detail::make_chart(d.generators(one_based)));
        const std::size_t n = one_based.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            detail::Cone f;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::size_t{1} << i)) {
                    f.push_back(one_based[i]);
                }
            }
            faces.insert(f);
        }
    }
    if (faces.empty()) {
        faces.insert(detail::Cone{});
    }
    std::vector<detail::Cone> sorted(faces.begin(), faces.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const detail::Cone& a, const detail::Cone& b) { return a.size() < b.size(); });
    for (const auto& m : sorted) {
        Piece p;
        p.M = m;
        std::set<int> support;
        for (int e : m) {
            const IntVec& v = d.edges[static_cast<std::size_t>(e - 1)];
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (v[j] != 0) {
                    support.insert(static_cast<int>(j) + 1);
                }
            }
        }
        p.I.assign(support.begin(), support.end());
        d.pieces.push_back(std::move(p));
    }
    return d;
}

struct Membership {
    std::size_t piece = 0;
    std::vector<std::int64_t> coefficients;
};

/// The piece whose relative interior contains the point, with the point's
/// positive integer coefficients on that piece's edges.
inline Membership lattice_membership(const Decomposition& d, const IntVec& point)
{
    if (point.size() != static_cast<std::size_t>(d.t)) {
        throw std::invalid_argument("point dimension differs from the cone dimension");
    }
    std::vector<int> support;
    for (std::size_t j = 0; j < point.size(); ++j) {
        if (point[j] < 0) {
            throw std::invalid_argument("point lies outside the cone");
        }
        if (point[j] != 0) {
            support.push_back(static_cast<int>(j) + 1);
        }
    }
    if (support.empty()) {
        return {0, {}};
    }
    for (std::size_t c = 0; c < d.maximal_cones.size(); ++c) {
        const auto& cone = d.maximal_cones[c];
        const Decomposition::Chart chart =
            c < d.charts.size() ? d.charts[c] : detail::make_chart(d.generators(cone));
        const std::size_t k = cone.size();
        std::vector<Rational> lambda(k, Rational(0));
        for (std::size_t i = 0; i < k; ++i) {
            const Rational xi(static_cast<long>(point[chart.columns[i]]));
            if (xi == 0) {
                continue;
            }
            for (std::size_t j = 0; j < k; ++j) {
                lambda[j] += xi * chart.inverse[i][j];
            }
        }
        if (std::any_of(lambda.begin(), lambda.end(), [](const Rational& x) { return x < 0; })) {
            continue;
        }
        bool in_span = true;
        for (std::size_t x = 0; x < point.size() && in_span; ++x) {
            Rational coord = 0;
            for (std::size_t j = 0; j < k; ++j) {
                coord += lambda[j] * Rational(static_cast<long>(d.edges[static_cast<std::size_t>(cone[j] - 1)][x]));
            }
            in_span = coord == Rational(static_cast<long>(point[x]));
        }
        if (!in_span) {
            continue;
        }
        Membership m;
        std::vector<int> face;
        for (std::size_t j = 0; j < k; ++j) {
            if (lambda[j] == 0) {
                continue;
            }
            if (lambda[j].get_den() != 1) {
                throw std::logic_error("non-integral coefficients on a piece");
            }
            face.push_back(cone[j]);
            m.coefficients.push_back(to_int64(lambda[j].get_num()));
        }
        auto it = std::find_if(d.pieces.begin(), d.pieces.end(), [&face](const Piece& p) { return p.M == face; });
        if (it == d.pieces.end()) {
            throw std::logic_error("face missing from the piece list");
        }
        m.piece = static_cast<std::size_t>(it - d.pieces.begin());
        return m;
    }
    throw std::invalid_argument("point lies outside the cone");
}

} // namespace conezeta

#endif // CONEZETA_CONE_HPP

#ifndef CONEZETA_ORACLE_HPP
#define CONEZETA_ORACLE_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lie_algebra.hpp"
#include "rational.hpp"

namespace conezeta {

/// Upper triangular, positive diagonal, entry (i,j) for j > i in [0, m_jj).
/// The rows span the sublattice.
using HnfMatrix = std::vector<IntVec>;

namespace detail {

/// Diagonal exponent sequences (e_1..e_d) with sum n, lexicographic.
inline std::vector<IntVec> compositions(int d, int n)
{
    std::vector<IntVec> out;
    IntVec e(static_cast<std::size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == d - 1) {
            e[static_cast<std::size_t>(i)] = left;
            out.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[static_cast<std::size_t>(i)] = k;
            rec(i + 1, left - k);
        }
    };
    if (d > 0) {
        rec(0, n);
    }
    return out;
}

/// Calls f for every HNF with the given diagonal exponents, off-diagonal
/// digits in lexicographic order (row by row).
template <class F>
void for_each_hnf_with_diagonal(const IntVec& exps, std::int64_t p, F&& f)
{
    const std::size_t d = exps.size();
    HnfMatrix h(d, IntVec(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
        h[i][i] = 1;
        for (std::int64_t k = 0; k < exps[i]; ++k) {
            h[i][i] = checked_mul(h[i][i], p);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            if (h[j][j] > 1) {
                slots.push_back({i, j});
            }
        }
    }
    for (;;) {
        f(static_cast<const HnfMatrix&>(h));
        std::size_t s = slots.size();
        while (s > 0) {
            auto [i, j] = slots[s - 1];
            if (++h[i][j] < h[j][j]) {
                break;
            }
            h[i][j] = 0;
            --s;
        }
        if (s == 0) {
            return;
        }
    }
}

/// True when v lies in the row span of the upper triangular h.
inline bool in_row_span(const HnfMatrix& h, IntVec v)
{
    const std::size_t d = h.size();
    for (std::size_t i = 0; i < d; ++i) {
        if (v[i] % h[i][i] != 0) {
            return false;
        }
        const std::int64_t x = v[i] / h[i][i];
        if (x != 0) {
            for (std::size_t j = i; j < d; ++j) {
                v[j] = checked_add(v[j], -checked_mul(x, h[i][j]));
            }
        }
    }
    return true;
}

} // namespace detail

enum class CountMode { Subalgebra, Ideal };

/// Bound on worker threads from CONE_ZETA_THREADS, default 1.
inline unsigned oracle_threads()
{
    const char* env = std::getenv("CONE_ZETA_THREADS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    try {
        const long v = std::stol(env);
        return v < 1 ? 1U : static_cast<unsigned>(v);
    } catch (const std::exception&) {
        throw std::invalid_argument("CONE_ZETA_THREADS must be a positive integer");
    }
}

/// Every sublattice of index p^n in Z^d, once each: diagonal exponent
/// sequences lexicographically, then off-diagonal digits lexicographically.
template <class F>
void for_each_sublattice(int d, std::int64_t p, int n, F&& f)
{
    if (d < 1 || n < 0 || !is_prime(p)) {
        throw std::invalid_argument("enumerate_sublattices needs d >= 1, n >= 0 and p prime");
    }
    for (const auto& e : detail::compositions(d, n)) {
        detail::for_each_hnf_with_diagonal(e, p, f);
    }
}

inline std::vector<HnfMatrix> enumerate_sublattices(int d, std::int64_t p, int n)
{
    std::vector<HnfMatrix> out;
    for_each_sublattice(d, p, n, [&](const HnfMatrix& h) { out.push_back(h); });
    return out;
}

inline bool is_closed(const LieAlgebraZ& a, const HnfMatrix& h, CountMode mode)
{
    const std::size_t d = h.size();
    if (mode == CountMode::Subalgebra) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                if (!detail::in_row_span(h, a.bracket(h[i], h[j]))) {
                    return false;
                }
            }
        }
        return true;
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            IntVec e(d, 0);
            e[j] = 1;
            if (!detail::in_row_span(h, a.bracket(h[i], e))) {
                return false;
            }
        }
    }
    return true;
}

/// Number of index-p^n sublattices of L (x) Z_p closed under the bracket
/// (subalgebras) or under bracketing with L (ideals).
inline std::int64_t count_subalgebras(const LieAlgebraZ& a, std::int64_t p, int n, CountMode mode,
                                      unsigned threads = 1)
{
    a.validate();
    if (n < 0 || !is_prime(p)) {
        throw std::invalid_argument("count_subalgebras needs n >= 0 and p prime");
    }
    const auto comps = detail::compositions(a.d, n);
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(comps.size())));
    std::vector<std::int64_t> partial(workers, 0);
    auto work = [&](unsigned w) {
        std::int64_t count = 0;
        for (std::size_t c = w; c < comps.size(); c += workers) {
            detail::for_each_hnf_with_diagonal(comps[c], p, [&](const HnfMatrix& h) {
                if (is_closed(a, h, mode)) {
                    ++count;
                }
            });
        }
        partial[w] = count;
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    std::int64_t total = 0;
    for (auto c : partial) {
        total += c;
    }
    return total;
}

/// Arithmetic in GF(q) by lookup tables, q = p^k small.
class FiniteField {
public:
    explicit FiniteField(int q)
    {
        if (q < 2 || q > 256) {
            throw std::invalid_argument("finite field size must be a prime power in [2, 256]");
        }
        int p = 2;
        while (q % p != 0) {
            ++p;
        }
        int k = 0;
        for (int r = q; r > 1; r /= p) {
            if (r % p != 0) {
                throw std::invalid_argument("finite field size must be a prime power");
            }
            ++k;
        }
        q_ = q;
        p_ = p;
        // Elements are base-p digit vectors of polynomials of degree < k.
        std::vector<int> modulus;
        if (k > 1) {
            modulus = find_irreducible(p, k);
        }
        add_.assign(static_cast<std::size_t>(q * q), 0);
        mul_.assign(static_cast<std::size_t>(q * q), 0);
        for (int a = 0; a < q; ++a) {
            for (int b = 0; b < q; ++b) {
                const auto da = digits(a, p, k);
                const auto db = digits(b, p, k);
                std::vector<int> s(static_cast<std::size_t>(k));
                for (int i = 0; i < k; ++i) {
                    s[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p;
                }
                add_[static_cast<std::size_t>(a * q + b)] = number(s, p);
                std::vector<int> m(static_cast<std::size_t>(2 * k), 0);
                for (int i = 0; i < k; ++i) {
                    for (int j = 0; j < k; ++j) {
                        auto& c = m[static_cast<std::size_t>(i + j)];
                        c = (c + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p;
                    }
                }
                for (int deg = 2 * k - 1; deg >= k; --deg) {
                    const int c = m[static_cast<std::size_t>(deg)];
                    if (c == 0) {
                        continue;
                    }
                    for (int i = 0; i <= k; ++i) {
                        auto& t = m[static_cast<std::size_t>(deg - k + i)];
                        t = ((t - c * modulus[static_cast<std::size_t>(i)]) % p + p) % p;
                    }
                }
                m.resize(static_cast<std::size_t>(k));
                mul_[static_cast<std::size_t>(a * q + b)] = number(m, p);
            }
        }
        neg_.assign(static_cast<std::size_t>(q), 0);
        for (int a = 0; a < q; ++a) {
            for (int b = 0; b < q; ++b) {
                if (add(a, b) == 0) {
                    neg_[static_cast<std::size_t>(a)] = b;
                }
            }
        }
    }

    int size() const { return q_; }
    int characteristic() const { return p_; }
    int add(int a, int b) const { return add_[static_cast<std::size_t>(a * q_ + b)]; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a * q_ + b)]; }
    int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
    int sub(int a, int b) const { return add(a, neg(b)); }

private:
    static std::vector<int> digits(int a, int p, int k)
    {
        std::vector<int> d(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            d[static_cast<std::size_t>(i)] = a % p;
            a /= p;
        }
        return d;
    }

    static int number(const std::vector<int>& d, int p)
    {
        int a = 0;
        for (auto it = d.rbegin(); it != d.rend(); ++it) {
            a = a * p + *it;
        }
        return a;
    }

    /// Monic irreducible of degree k over F_p, coefficients ascending.
    static std::vector<int> find_irreducible(int p, int k)
    {
        int count = 1;
        for (int i = 0; i < k; ++i) {
            count *= p;
        }
        for (int c = 0; c < count; ++c) {
            std::vector<int> f = digits(c, p, k);
            f.push_back(1);
            bool has_factor = false;
            // A reducible polynomial of degree k <= 8 has a monic factor of degree <= k/2.
            for (int deg = 1; deg <= k / 2 && !has_factor; ++deg) {
                int n = 1;
                for (int i = 0; i < deg; ++i) {
                    n *= p;
                }
                for (int g = 0; g < n && !has_factor; ++g) {
                    std::vector<int> h = digits(g, p, deg);
                    h.push_back(1);
                    std::vector<int> r = f;
                    for (int top = k; top >= deg; --top) {
                        const int lead = r[static_cast<std::size_t>(top)];
                        for (int i = 0; i <= deg; ++i) {
                            auto& t = r[static_cast<std::size_t>(top - deg + i)];
                            t = ((t - lead * h[static_cast<std::size_t>(i)]) % p + p) % p;
                        }
                    }
                    has_factor = std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
                }
            }
            if (!has_factor) {
                return f;
            }
        }
        throw std::logic_error("no irreducible polynomial found");
    }

    int q_ = 0;
    int p_ = 0;
    std::vector<int> add_;
    std::vector<int> mul_;
    std::vector<int> neg_;
};

/// Number of F_q[[t]]-submodules of index q^n in F_q[[t]]^2: t-stable
/// codimension-n subspaces of (F_q[t]/t^n)^2, by reduced row echelon forms.
inline std::int64_t count_submodules_fqt(int q, int n)
{
    if (n < 0) {
        throw std::invalid_argument("count_submodules_fqt needs n >= 0");
    }
    const FiniteField F(q);
    if (n == 0) {
        return 1;
    }
    const int dim = 2 * n;
    // Coordinates: (a_0..a_{n-1}, b_0..b_{n-1}) for a(t), b(t); t shifts a_i to a_{i+1}.
    auto shift = [n](const std::vector<int>& v) {
        std::vector<int> w(v.size(), 0);
        for (int i = 0; i + 1 < n; ++i) {
            w[static_cast<std::size_t>(i + 1)] = v[static_cast<std::size_t>(i)];
            w[static_cast<std::size_t>(n + i + 1)] = v[static_cast<std::size_t>(n + i)];
        }
        return w;
    };
    std::int64_t total = 0;
    std::vector<int> pivots;
    std::function<void(int)> choose = [&](int from) {
        if (static_cast<int>(pivots.size()) == n) {
            std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(dim), 0));
            std::vector<std::pair<int, int>> free;
            std::vector<bool> is_pivot(static_cast<std::size_t>(dim), false);
            for (int pc : pivots) {
                is_pivot[static_cast<std::size_t>(pc)] = true;
            }
            for (int r = 0; r < n; ++r) {
                rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])] = 1;
                for (int c = pivots[static_cast<std::size_t>(r)] + 1; c < dim; ++c) {
                    if (!is_pivot[static_cast<std::size_t>(c)]) {
                        free.push_back({r, c});
                    }
                }
            }
            auto in_span = [&](std::vector<int> v) {
                for (int r = 0; r < n; ++r) {
                    const int x = v[static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])];
                    if (x == 0) {
                        continue;
                    }
                    for (int c = 0; c < dim; ++c) {
                        auto& t = v[static_cast<std::size_t>(c)];
                        t = F.sub(t, F.mul(x, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]));
                    }
                }
                return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
            };
            for (;;) {
                bool stable = true;
                for (int r = 0; r < n && stable; ++r) {
                    stable = in_span(shift(rows[static_cast<std::size_t>(r)]));
                }
                if (stable) {
                    ++total;
                }
                std::size_t s = free.size();
                while (s > 0) {
                    auto [r, c] = free[s - 1];
                    auto& x = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                    if (++x < q) {
                        break;
                    }
                    x = 0;
                    --s;
                }
                if (s == 0) {
                    return;
                }
            }
        }
        for (int c = from; c < dim; ++c) {
            pivots.push_back(c);
            choose(c + 1);
            pivots.pop_back();
        }
    };
    choose(0);
    return total;
}

} // namespace conezeta

#endif // CONEZETA_ORACLE_HPP

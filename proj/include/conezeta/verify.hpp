#ifndef CONEZETA_VERIFY_HPP
#define CONEZETA_VERIFY_HPP

#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "cone_integral.hpp"
#include "io.hpp"
#include "lie_algebra.hpp"
#include "oracle.hpp"
#include "topological.hpp"

#ifndef CONEZETA_DATA_DIR
#define CONEZETA_DATA_DIR "data"
#endif

namespace conezeta {

class UnknownExample : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad parameter combinations, e.g. a rank that conflicts with the example.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string default_data_dir()
{
    const char* env = std::getenv("CONE_ZETA_DATA");
    return env != nullptr && *env != '\0' ? env : CONEZETA_DATA_DIR;
}

/// Cone integral data together with its resolution, as loaded from disk.
struct ConeInput {
    ConeIntegralData data;
    ResolutionData resolution;
    /// Cone variable -> matrix entry name such as "m22".
    std::map<std::string, std::string> matrix_variables;
};

/// Reads cone integral data; non-monomial data must name a resolution file
/// (key "resolution", relative to the data file).
inline ConeInput load_cone_input(const std::string& path)
{
    const Json j = read_json_file(path);
    ConeInput in;
    in.data = cone_data_from_json(j);
    if (j.contains("matrix_variables")) {
        in.matrix_variables = detail::get_as<std::map<std::string, std::string>>(j.at("matrix_variables"), "matrix_variables");
    }
    try {
        in.data.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path + ": " + e.what());
    }
    if (j.contains("resolution")) {
        const auto rel = detail::get_as<std::string>(j.at("resolution"), "resolution");
        const auto full = std::filesystem::path(path).parent_path() / rel;
        in.resolution = resolution_from_json(read_json_file(full.string()));
    } else if (in.data.monomial()) {
        in.resolution = monomial_resolution(in.data);
    } else {
        throw SchemaError(path + ": non-monomial cone integral data needs a \"resolution\" file");
    }
    if (in.resolution.conditions() != in.data.conditions.size()) {
        throw SchemaError(path + ": resolution and cone data disagree on the number of conditions");
    }
    return in;
}

struct Example {
    std::string name;
    int rank = 0;
    LieAlgebraZ algebra;
    ConeInput cone;
    Json target;
};

inline Example load_example(const std::string& name, int rank, const std::string& data_dir)
{
    std::string file;
    if (name == "abelian") {
        if (rank == 0) {
            throw UsageError("example 'abelian' needs --rank 1, 2 or 3");
        }
        if (rank < 1 || rank > 3) {
            throw UsageError("example 'abelian' ships for ranks 1..3, not " + std::to_string(rank));
        }
        file = "abelian_" + std::to_string(rank);
    } else if (name == "heisenberg" || name == "sl2") {
        if (rank != 0 && rank != 3) {
            throw UsageError("example '" + name + "' has rank 3, not " + std::to_string(rank));
        }
        file = name;
        rank = 3;
    } else {
        throw UnknownExample("unknown example '" + name + "' (known: abelian, heisenberg, sl2)");
    }
    const std::filesystem::path dir(data_dir);
    Example ex;
    ex.name = file;
    ex.rank = rank;
    ex.algebra = algebra_from_json(read_json_file((dir / "algebras" / (file + ".json")).string()));
    ex.cone = load_cone_input((dir / "cone_data" / (file + ".json")).string());
    ex.target = read_json_file((dir / "targets" / (file + ".json")).string());
    return ex;
}

struct PipelineResult {
    Decomposition decomposition;
    EdgeConstants edges;
    MotivicRational raw;
    MotivicRational geom;
    MotivicRational P;
    TopZeta top_direct;
    TopZeta top_limit;
};

/// Raw integral, Z_geom with the triangular prefactor for rank d, P and Z_top.
inline PipelineResult run_pipeline(const ResolutionData& r, int rank)
{
    PipelineResult out;
    out.decomposition = decompose(cone_of(r));
    out.edges = edge_constants(r, out.decomposition);
    out.raw = assemble_geom(r, out.decomposition, out.edges);
    out.geom = MotivicRational(triangular_prefactor(rank)) * out.raw;
    out.P = zeta_from_geom(out.geom, rank);
    out.top_direct = top_zeta_direct(r, out.decomposition, out.edges);
    out.top_limit = top_zeta_limit(out.raw);
    return out;
}

/// "(L - 1)^k" when the class is a power of L - 1, otherwise the expanded text.
inline std::string display_class(const ClassExpr& c)
{
    if (c.symbol.empty() && !c.coeff.is_zero()) {
        LaurentPoly p(1);
        for (int k = 0; k <= 16; ++k) {
            if (c.coeff == p) {
                return k == 0 ? "1" : k == 1 ? "L - 1" : "(L - 1)^" + std::to_string(k);
            }
            p *= l_minus_one();
        }
    }
    return c.to_string();
}

inline std::string ray_text(const IntVec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s + ")";
}

inline std::string piece_label(const Piece& p)
{
    if (p.M.empty()) {
        return "0";
    }
    std::string s;
    for (int j : p.M) {
        s += "R" + std::to_string(j);
    }
    return s;
}

/// Decomposition table: edges with their constants, then one row per piece.
inline std::string decomposition_table(const Decomposition& d, const ResolutionData* r, const EdgeConstants* e)
{
    std::ostringstream os;
    os << "edges:\n";
    for (std::size_t k = 0; k < d.edges.size(); ++k) {
        os << "  R" << k + 1 << " = " << ray_text(d.edges[k]);
        if (e != nullptr) {
            os << "  A=" << (*e)[k].A << " B=" << (*e)[k].B;
        }
        os << (k < d.extreme_count ? "" : "  (subdivision)") << "\n";
    }
    os << "pieces:\n";
    std::size_t width = 6;
    for (const auto& p : d.pieces) {
        width = std::max(width, piece_label(p).size() + 2);
    }
    auto pad = [](std::string s, std::size_t w) {
        s.resize(std::max(w, s.size()), ' ');
        return s;
    };
    os << "  " << pad("R_k", width) << pad("|I_k|", 7) << pad("|M_k|", 7) << (r ? "class" : "") << "\n";
    for (const auto& p : d.pieces) {
        std::string line = "  " + pad(piece_label(p), width) + pad(std::to_string(p.I.size()), 7) +
                           pad(std::to_string(p.M.size()), 7);
        if (r != nullptr) {
            auto it = r->strata.find(p.I);
            line += it == r->strata.end() ? "?" : display_class(it->second.cls);
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        os << line << "\n";
    }
    return os.str();
}

struct VerifyReport {
    std::vector<std::pair<bool, std::string>> lines;

    bool ok() const
    {
        return std::all_of(lines.begin(), lines.end(), [](const auto& l) { return l.first; });
    }

    void add(bool pass, const std::string& what) { lines.push_back({pass, what}); }

    std::string to_string() const
    {
        std::string s;
        for (const auto& [pass, what] : lines) {
            s += (pass ? "[match]    " : "[MISMATCH] ") + what + "\n";
        }
        s += ok() ? "verify: all checks match\n" : "verify: MISMATCH\n";
        return s;
    }
};

namespace detail {

inline std::string counts_text(const std::vector<std::int64_t>& v)
{
    std::string s;
    for (auto x : v) {
        s += (s.empty() ? "" : " ") + std::to_string(x);
    }
    return s;
}

inline void verify_conditions(const Example& ex, VerifyReport& rep)
{
    rep.add(ex.algebra.jacobi_holds(), "algebra: Jacobi identity");
    const ConditionSet cs = gen_conditions(ex.algebra, ConditionMode::Subalgebra, MatrixShape::Triangular);
    const MonomialityReport mr = monomiality_report(cs);
    const bool expect_monomial = ex.target.value("monomial_reducible", true);
    rep.add(mr.monomial_reducible == expect_monomial,
            std::string("conditions: ") + (mr.monomial_reducible ? "monomial-reducible" : "not monomial-reducible") +
                ", " + std::to_string(mr.conditions.size()) + " reduced condition(s)");

    const auto& cd = ex.cone.data;
    std::map<std::string, std::size_t> var_of_entry;
    for (std::size_t v = 0; v < cs.variables.size(); ++v) {
        var_of_entry[cs.variables[v]] = v;
    }
    // Integrand of the triangular form: |det| and weight sum_i (d - i) ord m_ii.
    bool integrand = !ex.cone.matrix_variables.empty();
    for (std::size_t i = 0; i < cd.m() && integrand; ++i) {
        auto it = ex.cone.matrix_variables.find(cd.variables[i]);
        if (it == ex.cone.matrix_variables.end() || !var_of_entry.count(it->second)) {
            integrand = false;
            break;
        }
        const auto [r, c] = cs.positions[var_of_entry.at(it->second)];
        const std::int64_t f = r == c ? 1 : 0;
        const std::int64_t g = r == c ? ex.rank - r : 0;
        integrand = cd.f0.monomial && cd.g0.monomial && cd.f0.exponents[i] == f && cd.g0.exponents[i] == g;
    }
    rep.add(integrand, "integrand: f0 = det, g0 = prod m_ii^(d-i)");

    if (!mr.monomial_reducible || !cd.monomial()) {
        return;
    }
    // Reduced conditions, rewritten in the cone variables, against the curated list.
    auto to_cone = [&](const MPoly& p, IntVec& out) {
        if (p.size() != 1) {
            return false;
        }
        out.assign(cd.m(), 0);
        const auto& e = p.terms().begin()->first;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) {
                continue;
            }
            bool found = false;
            for (std::size_t i = 0; i < cd.m(); ++i) {
                auto it = ex.cone.matrix_variables.find(cd.variables[i]);
                if (it != ex.cone.matrix_variables.end() && it->second == cs.variables[v]) {
                    out[i] = e[v];
                    found = true;
                }
            }
            if (!found) {
                return false;
            }
        }
        return true;
    };
    std::set<std::pair<IntVec, IntVec>> generated;
    bool mapped = true;
    for (const auto& c : mr.conditions) {
        IntVec f;
        IntVec g;
        mapped = mapped && to_cone(c.lhs, f) && to_cone(c.rhs, g);
        generated.insert({f, g});
    }
    std::set<std::pair<IntVec, IntVec>> curated;
    for (const auto& c : cd.conditions) {
        curated.insert({c.f.exponents, c.g.exponents});
    }
    rep.add(mapped && generated == curated,
            "conditions: generated set equals the cone data conditions (" + std::to_string(curated.size()) + ")");
}

inline void verify_table(const Example& ex, const PipelineResult& res, VerifyReport& rep)
{
    const auto& d = res.decomposition;
    const auto& r = ex.cone.resolution;
    if (ex.target.contains("edges")) {
        bool ok = true;
        std::string text;
        for (const auto& e : ex.target.at("edges")) {
            const IntVec ray = e.at("ray").get<IntVec>();
            const EdgeConstant want{e.at("A").get<std::int64_t>(), e.at("B").get<std::int64_t>()};
            auto it = std::find(d.edges.begin(), d.edges.end(), ray);
            ok = ok && it != d.edges.end() && res.edges[static_cast<std::size_t>(it - d.edges.begin())] == want;
            text += (text.empty() ? "" : " ") + std::string("(") + std::to_string(want.A) + "," + std::to_string(want.B) + ")";
        }
        ok = ok && d.edges.size() == ex.target.at("edges").size();
        rep.add(ok, "edge constants: " + text);
    }
    if (ex.target.contains("table")) {
        const Json& rows = ex.target.at("table");
        bool ok = rows.size() == d.pieces.size();
        for (const auto& row : rows) {
            std::set<IntVec> gens;
            for (const auto& g : row.at("generators")) {
                gens.insert(g.get<IntVec>());
            }
            const Piece* match = nullptr;
            for (const auto& p : d.pieces) {
                std::set<IntVec> pg;
                for (int j : p.M) {
                    pg.insert(d.edges[static_cast<std::size_t>(j - 1)]);
                }
                if (pg == gens) {
                    match = &p;
                }
            }
            if (match == nullptr) {
                ok = false;
                continue;
            }
            const auto want_class = parse_class(row.at("class").get<std::string>());
            auto st = r.strata.find(match->I);
            ok = ok && static_cast<int>(match->I.size()) == row.at("I").get<int>() &&
                 static_cast<int>(match->M.size()) == row.at("M").get<int>() && st != r.strata.end() &&
                 st->second.cls == want_class;
        }
        rep.add(ok, "table: " + std::to_string(d.pieces.size()) + " pieces (R_k, |I_k|, |M_k|, class)");
    }
}

inline void verify_closed_forms(const Example& ex, const PipelineResult& res, VerifyReport& rep)
{
    const MotivicRational geom = product_from_json(ex.target.at("z_geom"));
    rep.add(mr_equal(res.geom, geom) && canonical_text(res.geom) == canonical_text(geom),
            "z_geom: " + canonical_text(res.geom));
    const MotivicRational P = product_from_json(ex.target.at("p"));
    rep.add(mr_equal(res.P, P) && canonical_text(res.P) == canonical_text(P), "p: " + canonical_text(res.P));
    const RationalFunctionS top = rational_s_from_json(ex.target.at("z_top"));
    rep.add(res.top_direct.value == top, "z_top (direct): " + res.top_direct.to_string());
    rep.add(res.top_limit.value == top, "z_top (L -> 1 limit): " + res.top_limit.to_string());
}

inline void verify_oracle(const Example& ex, const PipelineResult& res, VerifyReport& rep, unsigned threads)
{
    if (!ex.target.contains("oracle")) {
        return;
    }
    const auto& o = ex.target.at("oracle");
    const int max_n = o.at("max_n").get<int>();
    for (const auto& pj : o.at("primes")) {
        const int p = pj.get<int>();
        const auto series = mr_specialize(res.P, p).series(max_n);
        std::vector<std::int64_t> counts;
        bool ok = true;
        for (int n = 0; n <= max_n; ++n) {
            counts.push_back(count_subalgebras(ex.algebra, p, n, CountMode::Subalgebra, threads));
            ok = ok && Rational(counts.back()) == series[static_cast<std::size_t>(n)];
        }
        rep.add(ok, "oracle p=" + std::to_string(p) + " n=0.." + std::to_string(max_n) + ": " + counts_text(counts));
    }
}

} // namespace detail

inline VerifyReport verify_example(const Example& ex, unsigned threads = 1)
{
    VerifyReport rep;
    detail::verify_conditions(ex, rep);
    const PipelineResult res = run_pipeline(ex.cone.resolution, ex.rank);
    detail::verify_table(ex, res, rep);
    detail::verify_closed_forms(ex, res, rep);
    detail::verify_oracle(ex, res, rep, threads);
    return rep;
}

} // namespace conezeta

#endif // CONEZETA_VERIFY_HPP

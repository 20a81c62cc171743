#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "conezeta/conezeta.hpp"

using namespace conezeta;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kParse = 3, kUnknownExample = 4, kComputation = 5 };

struct Options {
    std::string input;
    std::string example;
    std::string data_dir = default_data_dir();
    std::string mode = "sub";
    std::string format = "text";
    int rank = 0;
    int p = 0;
    int n = -1;
    int order = -1;
    int q = 0;
};

struct Source {
    std::optional<ConeSpec> cone;
    std::optional<ResolutionData> resolution;
    int rank = 0;
};

Source load_source(const Options& o, bool need_rank)
{
    if (!o.example.empty() && !o.input.empty()) {
        throw UsageError("--input and --example are mutually exclusive");
    }
    if (o.example.empty() && o.input.empty()) {
        throw UsageError("one of --input or --example is required");
    }
    Source s;
    if (!o.example.empty()) {
        const Example ex = load_example(o.example, o.rank, o.data_dir);
        s.resolution = ex.cone.resolution;
        s.rank = ex.rank;
        return s;
    }
    const Json j = read_json_file(o.input);
    if (j.contains("divisors")) {
        s.resolution = resolution_from_json(j);
    } else if (j.contains("variables")) {
        s.resolution = load_cone_input(o.input).resolution;
    } else if (j.contains("t")) {
        s.cone = cone_spec_from_json(j);
    } else {
        throw SchemaError(o.input + ": not a cone, cone integral data or resolution data file");
    }
    if (o.rank < 0) {
        throw UsageError("--rank must be nonnegative");
    }
    if (need_rank && !j.contains("t") && o.rank == 0) {
        throw UsageError("--rank is required with --input for this command");
    }
    s.rank = o.rank;
    return s;
}

const ResolutionData& need_resolution(const Source& s)
{
    if (!s.resolution) {
        throw UsageError("this command needs cone integral data or resolution data, not a bare cone");
    }
    return *s.resolution;
}

unsigned threads_from_env()
{
    try {
        return oracle_threads();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void print_json(const Json& j)
{
    std::cout << j.dump(2) << "\n";
}

int cmd_decompose(const Options& o)
{
    const Source s = load_source(o, false);
    const ConeSpec cone = s.resolution ? cone_of(*s.resolution) : *s.cone;
    const Decomposition d = decompose(cone);
    std::optional<EdgeConstants> e;
    if (s.resolution) {
        e = edge_constants(*s.resolution, d);
    }
    if (o.format == "json") {
        Json j = to_json(d);
        if (e) {
            j["edge_constants"] = Json::array();
            for (const auto& c : *e) {
                j["edge_constants"].push_back({{"A", c.A}, {"B", c.B}});
            }
            for (std::size_t k = 0; k < d.pieces.size(); ++k) {
                j["pieces"][k]["class"] = s.resolution->strata.at(d.pieces[k].I).cls.to_string();
            }
        }
        print_json(j);
    } else {
        std::cout << decomposition_table(d, s.resolution ? &*s.resolution : nullptr, e ? &*e : nullptr);
    }
    return kOk;
}

int cmd_zeta(const Options& o, const std::string& which)
{
    const Source s = load_source(o, which != "zeta-top");
    const PipelineResult res = run_pipeline(need_resolution(s), s.rank);
    std::string text;
    if (which == "zeta-geom") {
        text = canonical_text(res.geom);
    } else if (which == "zeta-p") {
        text = canonical_text(res.P);
    } else {
        if (!(res.top_direct == res.top_limit)) {
            throw std::logic_error("direct and limit topological zeta functions differ: " + res.top_direct.to_string() +
                                   " vs " + res.top_limit.to_string());
        }
        text = res.top_direct.to_string();
    }
    if (o.format == "json") {
        print_json(Json{{which == "zeta-geom" ? "z_geom" : which == "zeta-p" ? "p" : "z_top", text}, {"rank", s.rank}});
    } else {
        std::cout << text << "\n";
    }
    return kOk;
}

int cmd_series(const Options& o)
{
    if (o.order < 0) {
        throw UsageError("--order must be given and nonnegative");
    }
    const Source s = load_source(o, true);
    const PipelineResult res = run_pipeline(need_resolution(s), s.rank);
    std::vector<std::string> coeffs;
    if (o.p != 0) {
        if (o.p < 2) {
            throw UsageError("--p must be at least 2");
        }
        for (const auto& c : mr_specialize(res.P, o.p).series(o.order)) {
            coeffs.push_back(to_string(c));
        }
    } else {
        for (const auto& c : canonical_series(res.P, o.order)) {
            coeffs.push_back(c.to_string());
        }
    }
    if (o.format == "json") {
        Json j{{"order", o.order}, {"coefficients", coeffs}};
        if (o.p != 0) {
            j["p"] = o.p;
        }
        print_json(j);
    } else {
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            std::cout << "T^" << k << ": " << coeffs[k] << "\n";
        }
    }
    return kOk;
}

int cmd_oracle(const Options& o)
{
    if (o.n < 0) {
        throw UsageError("--n must be given and nonnegative");
    }
    const auto start = std::chrono::steady_clock::now();
    std::int64_t count = 0;
    Json j;
    if (o.q != 0) {
        if (o.p != 0 || !o.input.empty() || !o.example.empty()) {
            throw UsageError("--q counts F_q[[t]]-submodules and takes no --p, --input or --example");
        }
        count = count_submodules_fqt(o.q, o.n);
        j = Json{{"q", o.q}, {"n", o.n}, {"count", count}};
    } else {
        if (o.p == 0) {
            throw UsageError("--p is required (or --q for F_q[[t]]-submodules)");
        }
        if (!is_prime(o.p)) {
            throw UsageError("--p must be prime");
        }
        if (!o.example.empty() && !o.input.empty()) {
            throw UsageError("--input and --example are mutually exclusive");
        }
        LieAlgebraZ a;
        if (!o.example.empty()) {
            a = load_example(o.example, o.rank, o.data_dir).algebra;
        } else if (!o.input.empty()) {
            a = algebra_from_json(read_json_file(o.input));
        } else {
            throw UsageError("one of --input or --example is required");
        }
        if (!a.jacobi_holds()) {
            throw SchemaError("structure constants violate the Jacobi identity");
        }
        const CountMode mode = o.mode == "ideal" ? CountMode::Ideal : CountMode::Subalgebra;
        const unsigned threads = threads_from_env();
        if (a.d > 3 || o.n > 4 || o.p > 5) {
            std::cerr << "cone-zeta: warning: beyond the tested budget (d <= 3, n <= 4, p <= 5); this may be slow\n";
        }
        count = count_subalgebras(a, o.p, o.n, mode, threads);
        j = Json{{"p", o.p}, {"n", o.n}, {"mode", o.mode}, {"count", count}};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    if (o.format == "json") {
        j["elapsed_ms"] = ms.count();
        print_json(j);
    } else {
        if (o.q != 0) {
            std::cout << "q=" << o.q << " n=" << o.n << " count=" << count << "\n";
        } else {
            std::cout << "p=" << o.p << " n=" << o.n << " mode=" << o.mode << " count=" << count << "\n";
        }
    }
    return kOk;
}

int cmd_verify(const Options& o)
{
    if (o.example.empty()) {
        throw UsageError("verify needs --example");
    }
    const Example ex = load_example(o.example, o.rank, o.data_dir);
    const VerifyReport rep = verify_example(ex, threads_from_env());
    if (o.format == "json") {
        Json checks = Json::array();
        for (const auto& [pass, what] : rep.lines) {
            checks.push_back({{"match", pass}, {"check", what}});
        }
        print_json(Json{{"example", ex.name}, {"checks", checks}, {"ok", rep.ok()}});
    } else {
        std::cout << "example: " << ex.name << "\n" << rep.to_string();
    }
    return rep.ok() ? kOk : kMismatch;
}

int fail(int code, const std::string& msg)
{
    std::cerr << "cone-zeta: error: " << msg << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cone integrals, motivic and topological zeta functions of Lie algebras"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--data-dir", o.data_dir, "Directory with the built-in example data");
    };
    auto add_source = [&](CLI::App* sub) {
        sub->add_option("--input", o.input, "Input JSON file");
        sub->add_option("--example", o.example, "Built-in example: abelian, heisenberg, sl2");
        sub->add_option("--rank", o.rank, "Rank d of the algebra");
    };

    auto* decompose_cmd = app.add_subcommand("decompose", "Print the cone decomposition table");
    add_source(decompose_cmd);
    add_common(decompose_cmd);

    std::map<std::string, CLI::App*> zeta_cmds;
    for (const auto& [name, help] : {std::pair{"zeta-geom", "Print Z_geom in canonical form"},
                                     std::pair{"zeta-p", "Print the Poincare series P in canonical form"},
                                     std::pair{"zeta-top", "Print the topological zeta function"}}) {
        auto* sub = app.add_subcommand(name, help);
        add_source(sub);
        add_common(sub);
        zeta_cmds[name] = sub;
    }

    auto* series_cmd = app.add_subcommand("series", "Print T-coefficients of P");
    add_source(series_cmd);
    add_common(series_cmd);
    series_cmd->add_option("--order", o.order, "Highest power of T")->required();
    series_cmd->add_option("--p", o.p, "Specialize L to this number");

    auto* oracle_cmd = app.add_subcommand("oracle", "Count subalgebras or ideals of index p^n by brute force");
    add_source(oracle_cmd);
    add_common(oracle_cmd);
    oracle_cmd->add_option("--p", o.p, "Prime");
    oracle_cmd->add_option("--n", o.n, "Index exponent")->required();
    oracle_cmd->add_option("--mode", o.mode, "sub or ideal")->check(CLI::IsMember({"sub", "ideal"}));
    oracle_cmd->add_option("--q", o.q, "Count F_q[[t]]-submodules of (F_q[[t]])^2 instead");

    auto* verify_cmd = app.add_subcommand("verify", "Run a built-in example and compare with stored targets");
    verify_cmd->add_option("--example", o.example, "Built-in example: abelian, heisenberg, sl2")->required();
    verify_cmd->add_option("--rank", o.rank, "Rank for the abelian example");
    add_common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kUsage, e.what());
    }

    try {
        if (decompose_cmd->parsed()) {
            return cmd_decompose(o);
        }
        for (const auto& [name, sub] : zeta_cmds) {
            if (sub->parsed()) {
                return cmd_zeta(o, name);
            }
        }
        if (series_cmd->parsed()) {
            return cmd_series(o);
        }
        if (oracle_cmd->parsed()) {
            return cmd_oracle(o);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(o);
        }
    } catch (const UsageError& e) {
        return fail(kUsage, e.what());
    } catch (const UnknownExample& e) {
        return fail(kUnknownExample, e.what());
    } catch (const SchemaError& e) {
        return fail(kParse, e.what());
    } catch (const ParseError& e) {
        return fail(kParse, e.what());
    } catch (const std::exception& e) {
        return fail(kComputation, e.what());
    }
    return fail(kUsage, "no command");
}

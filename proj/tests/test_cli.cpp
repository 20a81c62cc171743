#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "conezeta/conezeta.hpp"

using namespace conezeta;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args)
{
    const std::string cmd = std::string(CONEZETA_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return {};
    }
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string golden(const std::string& name)
{
    std::ifstream in(std::string(CONEZETA_GOLDEN_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<fs::path> data_files(const std::string& sub)
{
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(fs::path(CONEZETA_DATA_DIR) / sub)) {
        if (e.path().extension() == ".json") {
            out.push_back(e.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

fs::path temp_file(const std::string& name, const std::string& content)
{
    const fs::path p = fs::temp_directory_path() / ("conezeta_cli_" + name);
    std::ofstream(p) << content;
    return p;
}

} // namespace

TEST(CliGolden, Verify)
{
    for (const auto& [args, file] : std::vector<std::pair<std::string, std::string>>{
             {"verify --example heisenberg", "verify_heisenberg.txt"},
             {"verify --example sl2", "verify_sl2.txt"},
             {"verify --example abelian --rank 3", "verify_abelian_3.txt"}}) {
        const auto r = run_cli(args);
        EXPECT_EQ(r.code, 0) << args;
        EXPECT_EQ(r.out, golden(file)) << args;
    }
}

TEST(CliGolden, OtherCommands)
{
    for (const auto& [args, file] : std::vector<std::pair<std::string, std::string>>{
             {"decompose --example heisenberg", "decompose_heisenberg.txt"},
             {"zeta-top --example sl2", "zeta_top_sl2.txt"},
             {"zeta-p --example heisenberg", "zeta_p_heisenberg.txt"},
             {"series --example sl2 --order 3", "series_sl2.txt"}}) {
        const auto r = run_cli(args);
        EXPECT_EQ(r.code, 0) << args;
        EXPECT_EQ(r.out, golden(file)) << args;
    }
}

TEST(Cli, VerifyIsByteIdenticalAcrossRuns)
{
    for (const char* ex : {"heisenberg", "sl2"}) {
        const auto a = run_cli(std::string("verify --example ") + ex);
        const auto b = run_cli(std::string("verify --example ") + ex);
        EXPECT_EQ(a.out, b.out);
        EXPECT_FALSE(a.out.empty());
    }
}

TEST(Cli, VerifyAllAbelianRanks)
{
    for (int d = 1; d <= 3; ++d) {
        const auto r = run_cli("verify --example abelian --rank " + std::to_string(d));
        EXPECT_EQ(r.code, 0) << d;
        EXPECT_NE(r.out.find("verify: all checks match"), std::string::npos);
        EXPECT_EQ(r.out.find("[MISMATCH]"), std::string::npos);
    }
}

TEST(Cli, ZetaTopFromResolutionFileMatchesExample)
{
    const auto r = run_cli(std::string("zeta-top --input ") + CONEZETA_DATA_DIR + "/resolutions/sl2.json");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1/2 * (3*s + 8) / ((s + 2)^2*(s + 3)*(2*s + 5))\n");
}

TEST(Cli, SeriesSpecializesToOracleCounts)
{
    const auto r = run_cli("series --example heisenberg --order 3 --p 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "T^0: 1\nT^1: 4\nT^2: 49\nT^3: 157\n");
}

TEST(Cli, OracleJson)
{
    const auto r = run_cli("oracle --example heisenberg --p 2 --n 3 --format json");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("p"), 2);
    EXPECT_EQ(j.at("n"), 3);
    EXPECT_EQ(j.at("mode"), "sub");
    EXPECT_EQ(j.at("count"), 43);
    EXPECT_TRUE(j.contains("elapsed_ms"));

    const auto q = run_cli("oracle --q 3 --n 2 --format json");
    ASSERT_EQ(q.code, 0);
    EXPECT_EQ(Json::parse(q.out).at("count"), 13);
}

TEST(Cli, OracleFromAlgebraFile)
{
    const auto r = run_cli(std::string("oracle --input ") + CONEZETA_DATA_DIR + "/algebras/sl2.json --p 3 --n 2 --mode sub");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "p=3 n=2 mode=sub count=25\n");
}

TEST(Cli, DecomposeJsonHasTwelvePieces)
{
    const auto r = run_cli("decompose --example heisenberg --format json");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("pieces").size(), 12U);
    EXPECT_EQ(j.at("edge_constants").size(), 4U);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli("").code, 2);
    EXPECT_EQ(run_cli("frobnicate").code, 2);
    EXPECT_EQ(run_cli("verify").code, 2);
    EXPECT_EQ(run_cli("verify --example abelian").code, 2);
    EXPECT_EQ(run_cli("verify --example abelian --rank 7").code, 2);
    EXPECT_EQ(run_cli("verify --example heisenberg --rank 4").code, 2);
    EXPECT_EQ(run_cli("oracle --example sl2 --p 6 --n 1").code, 2);
    EXPECT_EQ(run_cli("oracle --example sl2 --n 1").code, 2);
    EXPECT_EQ(run_cli("series --example sl2").code, 2);
    EXPECT_EQ(run_cli("zeta-p --example sl2 --input x.json").code, 2);
    EXPECT_EQ(run_cli("decompose --example heisenberg --format xml").code, 2);
    EXPECT_EQ(run_cli("verify --example e8").code, 4);
    EXPECT_EQ(run_cli("decompose --input /nonexistent/file.json").code, 3);

    const auto bad_json = temp_file("bad.json", "{ not json");
    EXPECT_EQ(run_cli("decompose --input " + bad_json.string()).code, 3);
    const auto wrong_shape = temp_file("shape.json", R"({"hello": 1})");
    EXPECT_EQ(run_cli("decompose --input " + wrong_shape.string()).code, 3);
    const auto bad_class = temp_file("class.json", R"({"ambient_dim": 1,
        "divisors": [{"name": "x", "nf": [1], "ng": [0], "nu": 1}],
        "strata": [{"I": [], "class": "L -"}, {"I": [1], "class": "1"}]})");
    EXPECT_EQ(run_cli("zeta-top --input " + bad_class.string()).code, 3);
    const auto not_jacobi = temp_file("jacobi.json", R"({"dim": 3, "brackets": {"1,2": {"1": 1}, "1,3": {"2": 1}}})");
    EXPECT_EQ(run_cli("oracle --input " + not_jacobi.string() + " --p 2 --n 1").code, 3);

    setenv("CONE_ZETA_THREADS", "many", 1);
    EXPECT_EQ(run_cli("verify --example heisenberg").code, 2);
    unsetenv("CONE_ZETA_THREADS");
}

TEST(Cli, MismatchExitsOne)
{
    const fs::path dir = fs::temp_directory_path() / "conezeta_cli_data";
    fs::remove_all(dir);
    fs::copy(CONEZETA_DATA_DIR, dir, fs::copy_options::recursive);
    Json t = read_json_file((dir / "targets" / "heisenberg.json").string());
    t["z_top"]["numerator"] = Json::array({"2"});
    std::ofstream((dir / "targets" / "heisenberg.json").string()) << t.dump(2);
    const auto r = run_cli("verify --example heisenberg --data-dir " + dir.string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("[MISMATCH] z_top"), std::string::npos);
    EXPECT_NE(r.out.find("verify: MISMATCH"), std::string::npos);
    fs::remove_all(dir);
}

TEST(DataFiles, AlgebrasRoundTrip)
{
    for (const auto& p : data_files("algebras")) {
        const LieAlgebraZ a = algebra_from_json(read_json_file(p.string()));
        const Json j = to_json(a);
        EXPECT_EQ(algebra_from_json(j), a) << p;
        EXPECT_EQ(to_json(algebra_from_json(j)), j) << p;
        EXPECT_TRUE(a.jacobi_holds()) << p;
    }
}

TEST(DataFiles, ConeDataRoundTrip)
{
    for (const auto& p : data_files("cone_data")) {
        const Json j = to_json(cone_data_from_json(read_json_file(p.string())));
        EXPECT_EQ(to_json(cone_data_from_json(j)), j) << p;
        EXPECT_NO_THROW(load_cone_input(p.string())) << p;
    }
}

TEST(DataFiles, ResolutionsRoundTrip)
{
    for (const auto& p : data_files("resolutions")) {
        const ResolutionData r = resolution_from_json(read_json_file(p.string()));
        const Json j = to_json(r);
        EXPECT_EQ(resolution_from_json(j), r) << p;
        EXPECT_EQ(to_json(resolution_from_json(j)), j) << p;
    }
}

TEST(DataFiles, TargetsParse)
{
    for (const auto& p : data_files("targets")) {
        const Json t = read_json_file(p.string());
        EXPECT_NO_THROW(product_from_json(t.at("z_geom"))) << p;
        EXPECT_NO_THROW(product_from_json(t.at("p"))) << p;
        EXPECT_NO_THROW(rational_s_from_json(t.at("z_top"))) << p;
        EXPECT_EQ(Json::parse(t.dump()), t) << p;
    }
}

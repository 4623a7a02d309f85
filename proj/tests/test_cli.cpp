#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "helpers.hpp"
#include "schurbd/cli.hpp"
#include "schurbd/io.hpp"
#include "schurbd/synthesizer.hpp"

using namespace schurbd;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        static int counter = 0;
        path = fs::temp_directory_path() / ("schurbd_cli_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "schurbd");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kExample = R"({"t0":{"angle":0},"s":[{"re":1,"im":0},{"re":1,"im":0},{"re":0,"im":0},{"re":0,"im":0}]})";
const char* kInfinite = R"({"t0":{"re":1,"im":0},"s":[{"re":1,"im":0},{"re":3,"im":0},{"re":9,"im":0}]})";
const char* kNone = R"({"t0":{"re":1,"im":0},"s":[{"re":1,"im":0},{"re":3,"im":0},{"re":3,"im":0},{"re":5,"im":0}]})";

} // namespace

TEST_CASE("parse_problem examples")
{
    const ProblemFile a = parse_problem(kExample);
    CHECK(a.data.t0() == Complex(1.0));
    CHECK(a.data.N() == 3);
    CHECK(a.data.s(1) == Complex(1.0));

    const ProblemFile b = parse_problem(R"({"t0":{"re":0,"im":1},"s":[{"re":0.5,"im":0}]})");
    CHECK(b.data.t0() == Complex(0.0, 1.0));
    CHECK(b.data.N() == 0);

    try {
        parse_problem(R"({"t0":{"re":2,"im":0},"s":[{"re":1,"im":0}]})");
        FAIL("expected an input error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("t0 not unimodular") != std::string::npos);
    }
}

TEST_CASE("parse errors carry a path")
{
    const auto msg = [](const std::string& text) {
        try {
            parse_problem(text);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(msg("{not json").find("$: malformed JSON") == 0);
    CHECK(msg(R"({"s":[{"re":1,"im":0}]})").find("missing field 't0'") != std::string::npos);
    CHECK(msg(R"({"t0":{"angle":0},"s":[{"re":1,"im":0},{"re":"x","im":0}]})").find("$.s[1].re") == 0);
    CHECK(msg(R"({"t0":{"angle":0},"s":[]})").find("$.s") == 0);
    CHECK(msg(R"({"t0":{"angle":0},"s":[{"re":1,"im":0}],"tol":-1})").find("$.tol") == 0);
    // Slightly off the circle is normalized.
    CHECK(std::abs(std::abs(parse_problem(R"({"t0":{"re":1.0000000001,"im":0},"s":[{"re":1,"im":0}]})").data.t0()) -
                   1.0) < 1e-15);
}

TEST_CASE("serialization round trips are fixed points")
{
    for (const char* text : {kExample, kInfinite, kNone}) {
        const std::string once = serialize_problem(parse_problem(text));
        CHECK(serialize_problem(parse_problem(once)) == once);
    }
    const SolveResult r = solve(BoundaryJet(1.0, {1.0, 3.0, 9.0, Complex(0.0, 1.0)}), 3);
    std::vector<AnalyticFunction> funcs = r.solutions;
    funcs.push_back(AnalyticFunction::blaschke(std::polar(1.0, 0.2), {{0.1, 0.3}}));
    funcs.push_back(synth_interior_jet(std::polar(1.0, 0.4), {0.3, Complex(1.0, -2.0), 0.5}));
    funcs.push_back(lft_invert(build_lft(BoundaryJet(1.0, {1.0, 3.0}), 1).S, AnalyticFunction::blaschke(1.0, {0.5})));
    for (const auto& f : funcs) {
        const std::string once = serialize_function(f);
        const AnalyticFunction g = parse_function(once);
        CHECK(serialize_function(g) == once);
        CHECK(g.eval({0.2, 0.1}) == f.eval({0.2, 0.1}));
    }
}

TEST_CASE("function parse errors")
{
    CHECK_THROWS_AS(parse_function(R"({"kind":"spline"})"), InputError);
    CHECK_THROWS_AS(parse_function(R"({"kind":"blaschke","gamma":{"re":2,"im":0},"zeros":[]})"), InputError);
    CHECK_THROWS_AS(parse_function(R"({"kind":"polynomial","center":{"re":0,"im":0}})"), InputError);
    CHECK_THROWS_AS(parse_function(R"({"kind":"rational","center":{"re":0,"im":0},"poly":[],"shift":-1,)"
                                   R"("num":[],"den":[{"re":1,"im":0}]})"),
                    InputError);
    CHECK_THROWS_AS(parse_function(R"({"kind":"rational","center":{"re":0,"im":0},"poly":[],"shift":0,)"
                                   R"("num":[],"den":[{"re":0,"im":0}]})"),
                    InputError);
}

TEST_CASE("exit codes")
{
    TempDir dir;
    const auto ex = dir.write("ex.json", kExample);
    const auto inf = dir.write("inf.json", kInfinite);
    const auto none = dir.write("none.json", kNone);
    const auto bad = dir.write("bad.json", "{");

    CHECK(run({"classify", "--input", ex}).code == cli::kOk);
    CHECK(run({"classify", "--input", none}).code == cli::kNoSolution);
    CHECK(run({"classify", "--input", bad}).code == cli::kUsage);
    CHECK(run({"classify", "--input", (dir.path / "missing.json").string()}).code == cli::kUsage);
    CHECK(run({"classify"}).code == cli::kUsage);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"solve", "--input", none}).code == cli::kNoSolution);
    CHECK(run({"solve", "--input", inf, "--samples", "2"}).code == cli::kOk);
    CHECK(run({"selftest"}).code == cli::kOk);
    CHECK(run({"--help"}).code == cli::kOk);

    const auto z = dir.write("z.json", R"({"kind":"polynomial","center":{"re":0,"im":0},"coeffs":[{"re":0,"im":0},{"re":1,"im":0}]})");
    CHECK(run({"verify", "--input", ex, "--function", z}).code == cli::kOk);
    const auto wrong = dir.write("w.json", R"({"t0":{"angle":0},"s":[{"re":1,"im":0},{"re":1,"im":0},{"re":1,"im":0}]})");
    CHECK(run({"verify", "--input", wrong, "--function", z}).code == cli::kVerifyFailed);
    CHECK(run({"verify", "--input", ex, "--function", z, "--depth", "2"}).code == cli::kUsage);
}

TEST_CASE("classify report")
{
    TempDir dir;
    const auto ex = dir.write("ex.json", kExample);
    const Run r = run({"classify", "--input", ex, "--json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["verdict"] == "Unique");
    CHECK(j["case_tag"] == "unique_odd_rank_chain");
    CHECK(j["n"] == 2);
    CHECK(j["rank"] == 1);
    CHECK(j["u"].is_null());
    REQUIRE(j["orders"].size() == 2);
    CHECK(j["orders"][1]["rank"] == 1);
    CHECK(j["tol"] == kDefaultTol);

    const Run t = run({"classify", "--input", ex});
    CHECK(t.out.find("verdict: Unique") != std::string::npos);
}

TEST_CASE("solve writes function files and samples")
{
    TempDir dir;
    const auto inf = dir.write("inf.json", kInfinite);
    const auto out = dir.path / "out";
    const Run r = run({"solve", "--input", inf, "--samples", "3", "--out", out.string(), "--json"});
    REQUIRE(r.code == 0);
    const Json report = Json::parse(r.out);
    CHECK(report["solutions"].size() == 3);
    CHECK(fs::exists(out / "classification.json"));
    for (int i = 0; i < 3; ++i) {
        const auto fpath = out / ("solution_" + std::to_string(i) + ".json");
        const auto spath = out / ("samples_" + std::to_string(i) + ".json");
        REQUIRE(fs::exists(fpath));
        REQUIRE(fs::exists(spath));
        CHECK(run({"verify", "--input", inf, "--function", fpath.string()}).code == cli::kOk);
        const Json samples = Json::parse(read(spath));
        CHECK(samples["circle"].size() == 64);
        CHECK(samples["radial"].size() == 24);
        const AnalyticFunction f = parse_function(read(fpath));
        const Json& s0 = samples["circle"][5];
        const Complex z(s0["z"]["re"].get<double>(), s0["z"]["im"].get<double>());
        const Complex v(s0["f"]["re"].get<double>(), s0["f"]["im"].get<double>());
        CHECK(std::abs(f.eval(z) - v) < 1e-15);
    }
}

TEST_CASE("outputs are byte-identical across runs")
{
    TempDir dir;
    const auto inf = dir.write("inf.json", kInfinite);
    const auto a = run({"solve", "--input", inf, "--json"});
    const auto b = run({"solve", "--input", inf, "--json"});
    CHECK(a.out == b.out);
    const auto c = run({"classify", "--input", inf, "--json"});
    const auto d = run({"classify", "--input", inf, "--json"});
    CHECK(c.out == d.out);
}

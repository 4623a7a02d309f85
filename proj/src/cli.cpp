#include "schurbd/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "schurbd/classifier.hpp"
#include "schurbd/io.hpp"
#include "schurbd/synthesizer.hpp"
#include "schurbd/verifier.hpp"

namespace schurbd::cli {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(path + ": cannot open");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream outf(path, std::ios::binary);
    if (!outf) {
        throw InputError(path.string() + ": cannot write");
    }
    outf << text << '\n';
}

std::string fmt_complex(Complex z)
{
    std::ostringstream ss;
    ss.precision(12);
    ss << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return ss.str();
}

void print_classification(const Classification& c, std::ostream& out)
{
    out << "verdict: " << to_string(c.verdict) << '\n';
    out << "case: " << to_string(c.case_tag) << '\n';
    out << "n: " << c.n << '\n';
    if (c.rank) {
        out << "rank: " << *c.rank << '\n';
    }
    if (c.u) {
        out << "u: " << *c.u << '\n';
    }
    for (std::size_t k = 0; k < c.diagnostics.size(); ++k) {
        const PsdReport& r = c.diagnostics[k];
        out << "P_" << k + 1 << ": hermitian=" << (r.hermitian ? "yes" : "no") << " min_eig=" << r.min_eig
            << " rank=" << r.rank << '\n';
    }
    out << "fragile: " << (c.fragile ? "yes" : "no") << '\n';
    out << "tol: " << c.tol << '\n';
    out << "reason: " << c.reason << '\n';
}

int exit_for(const Classification& c) { return c.verdict == Verdict::NoSolution ? kNoSolution : kOk; }

int cmd_classify(const std::string& input, std::optional<double> tol, bool json, std::ostream& out)
{
    const ProblemFile p = parse_problem(read_file(input));
    const Classification c = classify(p.data, tol.value_or(p.tol.value_or(kDefaultTol)));
    if (json) {
        out << classification_to_json(c).dump(2) << '\n';
    } else {
        print_classification(c, out);
    }
    return exit_for(c);
}

int cmd_solve(const std::string& input, std::optional<int> samples, const std::string& out_dir, bool json,
              std::ostream& out)
{
    const ProblemFile p = parse_problem(read_file(input));
    const int k = samples.value_or(p.samples.value_or(3));
    const SolveResult res = solve(p.data, k, p.tol.value_or(kDefaultTol));

    Json report;
    report["classification"] = classification_to_json(res.classification);
    report["reason"] = res.reason;
    Json sols = Json::array();
    for (const auto& f : res.solutions) {
        sols.push_back(Json{{"function", function_to_json(f)},
                            {"samples", function_samples(f, p.data.t0())}});
    }
    if (!out_dir.empty()) {
        const std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "classification.json", report["classification"].dump(2));
        for (std::size_t i = 0; i < sols.size(); ++i) {
            write_file(dir / ("solution_" + std::to_string(i) + ".json"), sols[i]["function"].dump(2));
            write_file(dir / ("samples_" + std::to_string(i) + ".json"), sols[i]["samples"].dump(2));
        }
    }
    if (json) {
        report["solutions"] = std::move(sols);
        out << report.dump(2) << '\n';
    } else {
        out << "verdict: " << to_string(res.classification.verdict) << '\n';
        out << "case: " << to_string(res.classification.case_tag) << '\n';
        out << "reason: " << res.reason << '\n';
        out << "solutions: " << res.solutions.size() << '\n';
        for (std::size_t i = 0; i < res.solutions.size(); ++i) {
            const auto& f = res.solutions[i];
            out << "  [" << i << "] kind=" << f.kind() << " f(0)=" << fmt_complex(f.eval(0.0)) << '\n';
        }
    }
    return exit_for(res.classification);
}

int cmd_verify(const std::string& input, const std::string& function, int depth, bool angles, bool json,
               std::ostream& out)
{
    const ProblemFile p = parse_problem(read_file(input));
    const AnalyticFunction f = parse_function(read_file(function));
    const VerificationReport rep = verify_asymptotics(f, p.data, depth, angles);
    const bool ok = rep.passed && rep.supnorm <= 1.0 + 1e-8;
    if (json) {
        Json j = verification_to_json(rep);
        j["schur"] = rep.supnorm <= 1.0 + 1e-8;
        out << j.dump(2) << '\n';
    } else {
        out << "asymptotics: " << (rep.passed ? "pass" : "fail") << '\n';
        out << "supnorm: " << rep.supnorm << '\n';
        out << "details: " << rep.details << '\n';
    }
    return ok ? kOk : kVerifyFailed;
}

int cmd_selftest(std::ostream& out)
{
    int failures = 0;
    const auto check = [&](const std::string& name, auto&& body) {
        bool ok = false;
        try {
            ok = body();
        } catch (const std::exception& e) {
            out << "selftest " << name << ": exception " << e.what() << '\n';
        }
        out << "selftest " << name << ": " << (ok ? "pass" : "fail") << '\n';
        failures += ok ? 0 : 1;
    };
    check("determinate example", [] {
        const BoundaryJet data(1.0, {1.0, 1.0, 0.0, 0.0});
        const SolveResult r = solve(data, 1);
        return r.classification.verdict == Verdict::Unique && r.solutions.size() == 1 &&
               std::abs(r.solutions[0].eval(0.3) - 0.3) < 1e-9;
    });
    check("indeterminate pipeline", [] {
        const SolveResult r = solve(BoundaryJet(1.0, {1.0, 3.0, 9.0}), 3);
        return r.classification.verdict == Verdict::Infinite && r.solutions.size() == 3;
    });
    check("no solution", [] {
        return classify(BoundaryJet(1.0, {1.0, 3.0, 3.0, 5.0})).verdict == Verdict::NoSolution;
    });
    check("blaschke jet", [] {
        const Jet j = AnalyticFunction::blaschke(1.0, {0.5}).jet_at(1.0, 3);
        return std::abs(j[0] - 1.0) < 1e-12 && std::abs(j[1] - 3.0) < 1e-12 && std::abs(j[3] - 3.0) < 1e-12;
    });
    return failures == 0 ? kOk : kVerifyFailed;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Boundary interpolation for Schur-class functions"};
    app.require_subcommand(1);

    std::string input, function, out_dir;
    std::optional<double> tol;
    std::optional<int> samples;
    int depth = 24;
    bool json = false, angles = false;

    auto* c_classify = app.add_subcommand("classify", "Decide solvability and uniqueness");
    c_classify->add_option("--input", input, "Problem JSON")->required();
    c_classify->add_option("--tol", tol, "Relative tolerance");
    c_classify->add_flag("--json", json, "Machine-readable output");

    auto* c_solve = app.add_subcommand("solve", "Classify and construct solutions");
    c_solve->add_option("--input", input, "Problem JSON")->required();
    c_solve->add_option("--samples", samples, "Number of solutions in the infinite case");
    c_solve->add_option("--out", out_dir, "Directory for function files and samples");
    c_solve->add_flag("--json", json, "Machine-readable output");

    auto* c_verify = app.add_subcommand("verify", "Check a function against a problem");
    c_verify->add_option("--input", input, "Problem JSON")->required();
    c_verify->add_option("--function", function, "Function JSON")->required();
    c_verify->add_option("--depth", depth, "Deepest radial sample 2^-depth")->check(CLI::Range(4, 52));
    c_verify->add_flag("--angles", angles, "Also probe rays at +-30 and +-60 degrees");
    c_verify->add_flag("--json", json, "Machine-readable output");

    auto* c_selftest = app.add_subcommand("selftest", "Run built-in checks");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (c_classify->parsed()) {
            return cmd_classify(input, tol, json, out);
        }
        if (c_solve->parsed()) {
            return cmd_solve(input, samples, out_dir, json, out);
        }
        if (c_verify->parsed()) {
            return cmd_verify(input, function, depth, angles, json, out);
        }
        if (c_selftest->parsed()) {
            return cmd_selftest(out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kUsage;
}

} // namespace schurbd::cli

#include "hankel/cli.hpp"
#include "hankel/config.hpp"
#include "hankel/errors.hpp"
#include "hankel/matrix_io.hpp"
#include "hankel/output.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hankel;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "hankel_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path dir = fs::temp_directory_path() / "hankel_cli_test" / "configs";
    fs::create_directories(dir);
    const fs::path path = dir / (name + ".json");
    std::ofstream(path) << text;
    return path;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

/// Interval domains Lambda = [0, 1], Omega = [-1, 1], to be spliced after the opening brace.
const std::string kDomains = R"("lambda_domain": {"type": "interval", "lo": 0, "hi": 1},
  "omega_domain": {"type": "interval", "lo": -1, "hi": 1}, )";

std::string with_domains(const std::string& body) { return "{" + kDomains + body.substr(1); }

const std::string kSmallSweep = with_domains(R"({
  "experiment": "trace_H",
  "g": [{"type": "monomial", "p": 2}, {"type": "monomial", "p": 4}],
  "alphas": [20, 30, 40, 50],
  "grid": {"margin": 0.15}
})");

} // namespace

TEST_CASE("parse_config defaults") {
    const RunConfig rc = parse_config(with_domains(R"({"experiment": "trace_H", "alphas": [10, 20, 30, 40]})"));
    const SweepConfig& c = rc.sweep;
    CHECK(c.experiment == Experiment::trace_h);
    CHECK(c.dimension() == 1);
    CHECK(c.alphas == std::vector<double>{10, 20, 30, 40});
    CHECK(c.functions.size() == 1);
    CHECK(c.grid.margin == 0.8);
    CHECK(c.grid.half_width == 2.0);
    CHECK(c.gate_tolerance == 0.005);
    CHECK(c.verdict_tolerance == 0.10);
    CHECK(c.a.is_constant());
    CHECK_FALSE(rc.deterministic);
    CHECK(rc.output_dir == fs::path("out"));
}

TEST_CASE("parse_config reads every section") {
    const RunConfig rc = parse_config(R"({
      "experiment": "count",
      "lambda_domain": {"type": "disk", "center": [0, 0], "radius": 1},
      "omega_domain": {"type": "star", "c0": 1.0, "cos": [0, 0.1]},
      "symbol": {"terms": [{"coefficient": [1, 0], "x": {"type": "bump", "center": [0.1, 0], "radius": 0.5}}]},
      "g": {"type": "indicator", "lambda": 0.3},
      "alphas": [8, 12, 16, 24],
      "grid": {"margin": 0.3, "fixed_spacing": true, "gate_tolerance": 0.05, "gate_scope": "largest", "boundary_nodes": 128},
      "output": {"dir": "elsewhere", "verdict_tolerance": 0.3, "deterministic": true}
    })");
    const SweepConfig& c = rc.sweep;
    CHECK(c.experiment == Experiment::count);
    CHECK(c.dimension() == 2);
    CHECK_FALSE(c.a.x_independent());
    CHECK(c.thresholds == std::vector<double>{0.3});
    CHECK(c.grid.fixed_spacing);
    CHECK(c.gate_scope == GateScope::largest);
    CHECK(c.boundary_nodes == 128);
    CHECK(c.verdict_tolerance == 0.3);
    CHECK(rc.deterministic);
    CHECK(rc.output_dir == fs::path("elsewhere"));
}

TEST_CASE("growth alphas") {
    const RunConfig rc = parse_config(with_domains(R"({"experiment": "growth_suite", "alphas": {"s1": [25, 50], "hs": [400, 800]}})"));
    CHECK(rc.sweep.alphas == std::vector<double>{25, 50});
    CHECK(rc.sweep.hs_alphas == std::vector<double>{400, 800});
    CHECK_THROWS_AS(parse_config(with_domains(R"({"experiment": "trace_H", "alphas": {"s1": [25, 50, 60, 70]}})")), ConfigError);
}

TEST_CASE("config errors name the key path") {
    auto message = [](const std::string& text) -> std::string {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(message(with_domains(R"({"experiment": "trace_H", "alphas": [1, 2, 3, 4], "grid": {"margin": 0.5, "colour": 1}})"))
              .find("grid.colour") != std::string::npos);
    CHECK(message(with_domains(R"({"experiment": "trace_H", "alphas": [1, 2, "x", 4]})")).find("alphas") != std::string::npos);
    CHECK(message(with_domains(R"({"experiment": "trace_H", "alphas": [10, 5, 20, 30]})")).find("increasing") != std::string::npos);
    CHECK(message(with_domains(R"({"experiment": "nope", "alphas": [1, 2, 3, 4]})")).find("experiment") != std::string::npos);
    CHECK(message(with_domains(R"({"experiment": "trace_H"})")).find("alphas") != std::string::npos);
    CHECK(message(with_domains(R"({"experiment": "trace_H", "alphas": [1, 2, 3, 4], "grid": {"margin": 0.9}})")).find("grid.margin") != std::string::npos);
    CHECK(message(with_domains(R"({"experiment": "trace_H", "alphas": [1, 2, 3, 4],)")).find("parse error") != std::string::npos);
    CHECK_THROWS_AS(parse_config(with_domains(R"({"experiment": "trace_H", "alphas": [10, 20, 30]})")), InputError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("Nyquist violations surface at config time with the minimal N") {
    try {
        const RunConfig rc = parse_config(with_domains(R"({"experiment": "trace_H", "alphas": [10, 20, 30, 400], "grid": {"points": 64}})"));
        FAIL("expected a Nyquist violation");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("minimal N = ") != std::string::npos);
    }
}

TEST_CASE("version and usage") {
    const Run v = run({"version"});
    CHECK(v.code == exit_ok);
    CHECK(v.out == std::string("hankel_lab ") + kVersion + "\n");
    CHECK(run({"--help"}).code == exit_ok);
    CHECK(run({}).code == exit_config_error);
    CHECK(run({"frobnicate"}).code == exit_config_error);
    CHECK(run({"sweep"}).code == exit_config_error);
}

TEST_CASE("coeff prints the coefficient integrals") {
    const fs::path cfg = write_config("coeff", with_domains(R"({"experiment": "trace_H", "g": [{"type": "monomial", "p": 2}], "alphas": [10, 20, 30, 40]})"));
    const Run r = run({"coeff", "--config", cfg.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("w0 = 0.3183099\n") != std::string::npos);
    CHECK(r.out.find("w1 = 4\n") != std::string::npos);
    CHECK(r.out.find("a_widom(t^2, 1) = -0.0253303\n") != std::string::npos);
    CHECK(r.out.find("u_frak(t^2, 1) = 0.05066059\n") != std::string::npos);
    CHECK(r.out.find("predicted_log_coefficient = 0.2026424\n") != std::string::npos);
    CHECK(r.out.find("hypotheses_ok = true\n") != std::string::npos);
}

TEST_CASE("identities subcommand") {
    const fs::path out = scratch_dir("identities");
    const fs::path cfg = write_config("identities", with_domains(R"({"experiment": "identity_suite", "alphas": [12]})"));
    const Run r = run({"identities", "--config", cfg.string(), "--out", out.string(), "--deterministic"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("PASS UHU+H=0") != std::string::npos);
    const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
    CHECK(summary["verdict"] == "pass");
    CHECK(summary["deterministic"] == true);
    CHECK_FALSE(summary.contains("elapsed_seconds"));
}

TEST_CASE("exit codes for bad input") {
    const fs::path three = write_config("three", with_domains(R"({"experiment": "trace_H", "alphas": [10, 20, 30]})"));
    CHECK(run({"sweep", "--config", three.string()}).code == exit_config_error);
    const fs::path broken = write_config("broken", R"({"experiment": )");
    const Run b = run({"sweep", "--config", broken.string()});
    CHECK(b.code == exit_config_error);
    CHECK(b.err.find("parse error") != std::string::npos);
    CHECK(run({"sweep", "--config", "/nonexistent.json"}).code == exit_config_error);
    const fs::path suite = write_config("suite", with_domains(R"({"experiment": "identity_suite", "alphas": [12]})"));
    CHECK(run({"sweep", "--config", suite.string()}).code == exit_config_error);

    const fs::path blocker = scratch_dir("blocked") / "file";
    std::ofstream(blocker) << "x";
    const fs::path ok = write_config("ok", kSmallSweep);
    const Run u = run({"sweep", "--config", ok.string(), "--out", (blocker / "sub").string()});
    CHECK(u.code == exit_numerical_error);
}

TEST_CASE("sweep writes CSV, summary and plot files") {
    const fs::path out = scratch_dir("sweep");
    const fs::path cfg = write_config("sweep", kSmallSweep);
    const Run r = run({"sweep", "--config", cfg.string(), "--out", out.string()});
    CHECK((r.code == exit_ok || r.code == exit_check_failed));
    REQUIRE(fs::exists(out / "sweep.csv"));
    REQUIRE(fs::exists(out / "sweep_1.csv"));
    REQUIRE(fs::exists(out / "plot.gp"));
    const std::string csv = slurp(out / "sweep.csv");
    CHECK(csv.rfind("alpha,N,measured,predicted,gate_margin\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(csv.find('\r') == std::string::npos);

    const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
    CHECK(summary["experiment"] == "trace_H");
    CHECK(summary["series"].size() == 2);
    CHECK(summary["deterministic"] == false);
    CHECK(summary.contains("elapsed_seconds"));
    CHECK(summary["fit"].contains("A"));
    CHECK(summary["predicted_A"].get<double>() == doctest::Approx(0.20264236728467555));
}

TEST_CASE("deterministic runs are byte-identical") {
    const fs::path cfg = write_config("det", kSmallSweep);
    const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
    run({"sweep", "--config", cfg.string(), "--out", a.string(), "--deterministic"});
    run({"sweep", "--config", cfg.string(), "--out", b.string(), "--deterministic"});
    for (const char* f : {"sweep.csv", "sweep_1.csv", "summary.json", "plot.gp"}) CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("spectrum subcommand dumps spectra and matrices") {
    const fs::path out = scratch_dir("spectrum");
    const fs::path cfg = write_config("spectrum", kSmallSweep);
    const Run r = run({"spectrum", "--config", cfg.string(), "--out", out.string(), "--alpha", "25", "--dump-matrix"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("tr H^2 = ") != std::string::npos);
    const std::vector<double> s = read_spectrum(out / "singular_values.txt");
    CHECK_FALSE(s.empty());
    CHECK(std::is_sorted(s.begin(), s.end()));
    const Eigen::MatrixXcd m = read_matrix(out / "matrix.bin");
    CHECK(m.rows() == m.cols());
}

TEST_CASE("write_outputs with no accepted records") {
    SweepResult result;
    result.series.resize(1);
    result.series[0].label = "t^2";
    SweepRecord rej;
    rej.alpha = 10;
    rej.accepted = false;
    rej.diagnostic = "doubling-N gate failed";
    result.series[0].rejected.push_back(rej);
    const fs::path out = scratch_dir("empty");
    const auto written = write_outputs(result, out);
    CHECK_FALSE(fs::exists(out / "sweep.csv"));
    CHECK(written.size() == 2);
    const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
    CHECK(summary["verdict"] == "insufficient_data");
    CHECK(summary["fit"].is_null());
    CHECK(summary["series"][0]["rejected"][0]["diagnostic"] == "doubling-N gate failed");
    CHECK(slurp(out / "plot.gp").find("no accepted records") != std::string::npos);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
}

#include "hankel/cli.hpp"

#include "hankel/coefficients.hpp"
#include "hankel/config.hpp"
#include "hankel/errors.hpp"
#include "hankel/matrix_io.hpp"
#include "hankel/nystrom.hpp"
#include "hankel/operators.hpp"
#include "hankel/output.hpp"
#include "hankel/spectral.hpp"
#include "hankel/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>

namespace hankel {

namespace {

struct Options {
    std::string config;
    std::string out_dir;
    bool deterministic = false;
    bool verbose = false;
    std::optional<double> alpha;
    bool dump_matrix = false;
};

std::string g7(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.7g", v);
    return buf;
}

RunConfig prepare(const Options& o) {
    RunConfig rc = load_config(o.config);
    if (!o.out_dir.empty()) rc.output_dir = o.out_dir;
    rc.deterministic = rc.deterministic || o.deterministic;
    rc.verbose = o.verbose;
    return rc;
}

Logger logger(const RunConfig& rc, std::ostream& err) {
    if (!rc.verbose) return {};
    return [&err](const std::string& line) { err << line << '\n'; };
}

OutputOptions output_options(const RunConfig& rc, std::chrono::steady_clock::time_point start) {
    OutputOptions o;
    o.deterministic = rc.deterministic;
    o.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return o;
}

int report_sweep(const SweepResult& result, const RunConfig& rc, std::chrono::steady_clock::time_point start,
                 std::ostream& out) {
    write_outputs(result, rc.output_dir, output_options(rc, start));
    for (const auto& s : result.series) {
        out << s.label << ": " << s.records.size() << " records";
        if (s.fit) out << ", A = " << g7(s.fit->a) << ", r2 = " << g7(s.fit->r2);
        if (std::isfinite(s.predicted_a)) out << ", predicted A = " << g7(s.predicted_a);
        out << ", verdict " << s.verdict << '\n';
    }
    for (const auto& c : result.checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    for (const auto& w : result.warnings) out << "warning: " << w << '\n';
    out << "outputs written to " << rc.output_dir.string() << '\n';
    return result.passed() ? exit_ok : exit_check_failed;
}

int report_suite(const SuiteReport& report, const RunConfig& rc, std::chrono::steady_clock::time_point start,
                 std::ostream& out) {
    write_suite_outputs(report, rc.output_dir, output_options(rc, start));
    for (const auto& c : report.checks) {
        out << (c.skipped ? "SKIP " : c.passed ? "PASS " : "FAIL ") << c.name;
        if (c.alpha > 0.0) out << " (alpha=" << g7(c.alpha) << ")";
        out << ": deviation " << g7(c.deviation) << " tolerance " << g7(c.tolerance);
        if (!c.detail.empty()) out << " " << c.detail;
        out << '\n';
    }
    out << "outputs written to " << rc.output_dir.string() << '\n';
    return report.passed() ? exit_ok : exit_check_failed;
}

int cmd_coeff(const Options& o, std::ostream& out) {
    const RunConfig rc = prepare(o);
    const SweepConfig& c = rc.sweep;
    const SeparableSymbol& a = c.a;
    const int m = c.boundary_nodes;
    out << "experiment = " << to_string(c.experiment) << '\n';
    out << "dimension = " << c.dimension() << '\n';
    const CoefficientReport w0r = w0(a, c.lambda_domain, c.omega_domain);
    out << "w0 = " << g7(w0r.value) << '\n';
    const CoefficientReport w1r = w1(1.0, c.lambda_domain, c.omega_domain, m);
    out << "w1 = " << g7(w1r.value) << '\n';
    const CoefficientReport w1a = w1([&a](const Point& x, const Point& xi) { return std::abs(a(x, xi)); },
                                     c.lambda_domain, c.omega_domain, m);
    out << "w1(|a|) = " << g7(w1a.value) << '\n';
    for (const auto& g : c.functions) {
        const std::string name = g.describe();
        if (g.is_polynomial()) out << "a_widom(" << name << ", 1) = " << g7(a_widom(g, 1.0)) << '\n';
        out << "u_frak(" << name << ", 1) = " << g7(u_frak(even_part(g), 1.0)) << '\n';
    }
    for (double lambda : c.thresholds)
        if (c.experiment == Experiment::count || c.experiment == Experiment::wilf)
            out << "u_indicator(" << g7(lambda) << ", 1) = " << g7(u_indicator(lambda, 1.0)) << '\n';
    if (c.experiment == Experiment::trace_h || c.experiment == Experiment::trace_t || c.experiment == Experiment::count ||
        c.experiment == Experiment::hs_norm) {
        for (std::size_t i = 0; i < (c.experiment == Experiment::trace_h || c.experiment == Experiment::trace_t ? c.functions.size() : 1); ++i) {
            const Prediction p = sweep_prediction(c, i, std::exp(1.0));
            out << "predicted_log_coefficient = " << g7(p.log_coefficient) << '\n';
            if (c.experiment == Experiment::trace_t) out << "predicted_volume_coefficient = " << g7(p.volume_coefficient) << '\n';
            for (const auto& w : p.warnings) out << "warning: " << w << '\n';
        }
    }
    out << "hypotheses_ok = " << (w1r.hypotheses_ok ? "true" : "false") << '\n';
    return exit_ok;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
    const RunConfig rc = prepare(o);
    const SweepConfig& c = rc.sweep;
    const double alpha = o.alpha.value_or(c.alphas.front());
    std::filesystem::create_directories(rc.output_dir);

    if (c.experiment == Experiment::wilf) {
        const int panels = hankel_panel_count(c.hankel.a_lo, alpha);
        const HankelKernel kernel = c.hankel.kernel == "zero" ? HankelKernel::zero() : HankelKernel::carleman_kernel();
        const DenseOperator m = build_truncated_hankel(c.hankel.a_lo, alpha, kernel, panels * c.hankel.nodes_per_panel);
        const SpectralData s = hermitian_eigen(m);
        write_spectrum(rc.output_dir / "eigenvalues.txt", s.values);
        if (o.dump_matrix) write_matrix(rc.output_dir / "matrix.bin", m.matrix);
        out << "b = " << g7(alpha) << ", n = " << m.matrix.rows() << ", norm = "
            << g7(std::max(std::abs(s.values.front()), std::abs(s.values.back()))) << '\n';
        return exit_ok;
    }

    const Grid grid = grid_for(c, alpha);
    const GramBlocks blocks = gram_blocks(grid, c.a, c.lambda_domain, c.omega_domain);
    if (c.experiment == Experiment::trace_t) {
        const SpectralData s = hermitian_eigen(blocks.t);
        write_spectrum(rc.output_dir / "eigenvalues_T.txt", s.values);
        if (o.dump_matrix) write_matrix(rc.output_dir / "matrix.bin", blocks.t);
        out << "alpha = " << g7(alpha) << ", " << describe(grid) << ", T block " << blocks.t.rows() << " x "
            << blocks.t.cols() << '\n';
        return exit_ok;
    }
    const SpectralData s = h_spectrum(blocks);
    write_spectrum(rc.output_dir / "singular_values.txt", s.values);
    if (o.dump_matrix) write_matrix(rc.output_dir / "matrix.bin", g_gram(blocks));
    out << "alpha = " << g7(alpha) << ", " << describe(grid) << ", " << s.values.size()
        << " singular values of G, kernel dimension of H = " << s.kernel_dimension << '\n';
    out << "tr H^2 = " << g7(trace_of_function(s, TestFunction::monomial(2))) << '\n';
    return exit_ok;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err, std::optional<Experiment> forced) {
    const auto start = std::chrono::steady_clock::now();
    RunConfig rc = prepare(o);
    if (forced) rc.sweep.experiment = *forced;
    const Experiment e = rc.sweep.experiment;
    if (e == Experiment::identity_suite || e == Experiment::growth_suite)
        throw ConfigError("experiment: " + to_string(e) + " runs with the identities/growth subcommands");
    const SweepResult result = run_sweep(rc.sweep, logger(rc, err));
    return report_sweep(result, rc, start, out);
}

int cmd_identities(const Options& o, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    const RunConfig rc = prepare(o);
    return report_suite(identity_suite(rc.sweep, 1e-9, logger(rc, err)), rc, start, out);
}

int cmd_growth(const Options& o, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    const RunConfig rc = prepare(o);
    return report_suite(growth_suite(rc.sweep, 2.0, 0.15, logger(rc, err)), rc, start, out);
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trace and counting asymptotics of truncated Hankel-type operators", "hankel_lab"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&o](CLI::App* sub, bool with_config = true) {
        if (with_config) sub->add_option("--config", o.config, "JSON run configuration")->required();
        sub->add_option("--out", o.out_dir, "output directory (overrides output.dir)");
        sub->add_flag("--deterministic", o.deterministic, "byte-identical outputs (no timing fields)");
        sub->add_flag("--verbose", o.verbose, "progress lines on stderr");
    };
    CLI::App* coeff = app.add_subcommand("coeff", "print the coefficient integrals for the configured problem");
    CLI::App* spectrum = app.add_subcommand("spectrum", "dump the spectrum for a single alpha");
    CLI::App* sweep = app.add_subcommand("sweep", "run the configured alpha sweep and fit");
    CLI::App* identities = app.add_subcommand("identities", "run the exact identity suite");
    CLI::App* growth = app.add_subcommand("growth", "run the Schatten-norm growth suite");
    CLI::App* wilf = app.add_subcommand("wilf", "run the Carleman counting sweep");
    CLI::App* version = app.add_subcommand("version", "print the version");
    for (CLI::App* sub : {coeff, spectrum, sweep, identities, growth, wilf}) add_common(sub);
    spectrum->add_option("--alpha", o.alpha, "alpha (b for wilf); defaults to the first configured value");
    spectrum->add_flag("--dump-matrix", o.dump_matrix, "also write matrix.bin");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    }

    try {
        if (*version) {
            out << "hankel_lab " << kVersion << '\n';
            return exit_ok;
        }
        if (*coeff) return cmd_coeff(o, out);
        if (*spectrum) return cmd_spectrum(o, out);
        if (*sweep) return cmd_sweep(o, out, err, std::nullopt);
        if (*wilf) return cmd_sweep(o, out, err, Experiment::wilf);
        if (*identities) return cmd_identities(o, out, err);
        if (*growth) return cmd_growth(o, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const InputError& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_config_error;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return exit_numerical_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical_error;
    }
    return exit_config_error;
}

} // namespace hankel

#include "hankel/sweep.hpp"

#include "hankel/errors.hpp"
#include "hankel/nystrom.hpp"
#include "hankel/operators.hpp"
#include "hankel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hankel {

std::string to_string(Experiment e) {
    switch (e) {
    case Experiment::trace_h: return "trace_H";
    case Experiment::trace_t: return "trace_T";
    case Experiment::count: return "count";
    case Experiment::wilf: return "wilf";
    case Experiment::hs_norm: return "hs_norm";
    case Experiment::identity_suite: return "identity_suite";
    case Experiment::growth_suite: return "growth_suite";
    }
    return "unknown";
}

bool SweepResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

constexpr Eigen::Index kDirectCountLimit = 2048;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double finite_or_zero(double e) { return std::isfinite(e) ? e : 0.0; }

bool fits(Experiment e) {
    return e == Experiment::trace_h || e == Experiment::trace_t || e == Experiment::count ||
           e == Experiment::wilf || e == Experiment::hs_norm;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(8);
    s << v;
    return s.str();
}

double relative(double measured, double predicted) {
    if (predicted == 0.0) return std::abs(measured);
    return std::abs(measured - predicted) / std::abs(predicted);
}

double evaluate_prediction(const Prediction& p, int d, double alpha) {
    return std::pow(alpha, d) * p.volume_coefficient + std::pow(alpha, d - 1) * std::log(alpha) * p.log_coefficient;
}

/// Re tr(B g(T)) on the Lambda block, g polynomial; B == nullptr means the identity.
template <typename Matrix>
double weighted_polynomial_trace(const Matrix& t, const std::vector<double>& c, const Matrix* b) {
    Matrix acc = Matrix::Zero(t.rows(), t.cols());
    Matrix power = t;
    for (std::size_t k = 1; k < c.size(); ++k) {
        if (k > 1) power = (power * t).eval();
        if (c[k] != 0.0) acc += c[k] * power;
    }
    if (!b) return std::real(acc.trace());
    return std::real(b->cwiseProduct(acc.transpose()).sum());
}

double measure_trace_t(const SweepConfig& config, const Grid& grid, const TestFunction& g) {
    const GramBlocks blocks = gram_blocks(grid, config.a, config.lambda_domain, config.omega_domain);
    Complex w;
    const bool unit_weight = config.weight.is_constant(&w) && w == Complex(1.0);
    Eigen::MatrixXcd b;
    if (!unit_weight) b = pdo_block(grid, config.weight, blocks.lambda);
    const auto c = g.coefficients();
    if (imaginary_fraction(blocks.t) <= 1e-14 && (unit_weight || imaginary_fraction(b) <= 1e-14)) {
        const Eigen::MatrixXd t = blocks.t.real();
        const Eigen::MatrixXd br = unit_weight ? Eigen::MatrixXd() : Eigen::MatrixXd(b.real());
        return weighted_polynomial_trace<Eigen::MatrixXd>(t, c, unit_weight ? nullptr : &br);
    }
    return weighted_polynomial_trace<Eigen::MatrixXcd>(blocks.t, c, unit_weight ? nullptr : &b);
}

void finish_series(Series& s, const SweepConfig& config, std::vector<Check>& checks) {
    std::sort(s.records.begin(), s.records.end(), [](const auto& x, const auto& y) { return x.alpha < y.alpha; });
    std::sort(s.rejected.begin(), s.rejected.end(), [](const auto& x, const auto& y) { return x.alpha < y.alpha; });
    const std::string name = "coefficient[" + s.label + "]";
    if (s.records.size() < 4) {
        s.verdict = "insufficient_data";
        checks.push_back({name, false, std::to_string(s.records.size()) + " accepted records, fit needs 4"});
        return;
    }
    std::vector<double> alpha, y;
    for (const auto& r : s.records) {
        alpha.push_back(r.alpha);
        y.push_back(r.measured);
    }
    const bool volume = config.experiment == Experiment::trace_t;
    const int d = config.experiment == Experiment::wilf ? 1 : config.dimension();
    s.fit = fit_log_law(alpha, y, d, volume);

    if (config.experiment == Experiment::wilf) {
        const bool ok = s.fit->r2 >= config.r2_threshold;
        s.verdict = ok ? "pass" : "fail";
        checks.push_back({"affine_in_log_b[" + s.label + "]", ok,
                          "slope=" + fmt(s.fit->a) + " r2=" + fmt(s.fit->r2) + " (need >= " + fmt(config.r2_threshold) + ")"});
        return;
    }

    s.relative_error = relative(s.fit->a, s.predicted_a);
    bool ok = s.relative_error <= config.verdict_tolerance;
    std::string detail = "A=" + fmt(s.fit->a) + " predicted=" + fmt(s.predicted_a) + " error=" + fmt(s.relative_error);
    if (volume && s.predicted_d) {
        s.relative_error_d = relative(s.fit->d, *s.predicted_d);
        ok = ok && *s.relative_error_d <= config.volume_tolerance;
        detail += " D=" + fmt(s.fit->d) + " predicted=" + fmt(*s.predicted_d) + " error=" + fmt(*s.relative_error_d);
    }
    s.verdict = ok ? "pass" : "fail";
    checks.push_back({name, ok, detail});
}

SweepResult run_grid_sweep(const SweepConfig& config, const Logger& log) {
    SweepResult result;
    result.experiment = config.experiment;
    result.dimension = config.dimension();

    const bool per_function = config.experiment == Experiment::trace_h || config.experiment == Experiment::trace_t;
    const std::size_t count = per_function ? config.functions.size() : 1;
    result.series.resize(count);
    std::vector<Prediction> predictions;
    for (std::size_t i = 0; i < count; ++i) {
        Series& s = result.series[i];
        if (per_function) s.label = config.functions[i].describe();
        else if (config.experiment == Experiment::count) s.label = "n(lambda=" + fmt(config.thresholds.front()) + ")";
        else s.label = "hs_norm";
        const Prediction p = sweep_prediction(config, i, std::exp(1.0));
        predictions.push_back(p);
        s.predicted_a = p.log_coefficient;
        if (config.experiment == Experiment::trace_t) s.predicted_d = p.volume_coefficient;
        for (const auto& w : p.warnings)
            if (std::find(result.warnings.begin(), result.warnings.end(), w) == result.warnings.end())
                result.warnings.push_back(w);
    }

    const double largest = config.alphas.back();
    bool pairing_ok = true;
    std::string pairing_detail;
    int direct_counts = 0;

    for (double alpha : config.alphas) {
        const Grid grid = grid_for(config, alpha);
        SweepRecord base;
        base.alpha = alpha;
        base.n = grid.n;
        base.gate_margin = kNaN;
        const bool gated = config.gate_scope == GateScope::all ||
                           (config.gate_scope == GateScope::largest && alpha == largest);
        if (gated) {
            const double change = gate_change(config, grid);
            base.gated = true;
            base.gate_margin = config.gate_tolerance - change;
            if (!(change < config.gate_tolerance)) {
                base.accepted = false;
                base.diagnostic = "doubling-N gate failed: tr H^2 changed by " + fmt(change) + " (tolerance " +
                                  fmt(config.gate_tolerance) + ")";
            }
        }
        if (!base.accepted) {
            for (auto& s : result.series) s.rejected.push_back(base);
            if (log) log("alpha=" + fmt(alpha) + " rejected: " + base.diagnostic);
            continue;
        }

        std::vector<double> measured(count);
        switch (config.experiment) {
        case Experiment::trace_h: {
            const SpectralData spec = h_spectrum(gram_blocks(grid, config.a, config.lambda_domain, config.omega_domain));
            for (std::size_t i = 0; i < count; ++i) measured[i] = trace_of_function(spec, config.functions[i]);
            break;
        }
        case Experiment::count: {
            const SpectralData spec = h_spectrum(gram_blocks(grid, config.a, config.lambda_domain, config.omega_domain));
            const double lambda = config.thresholds.front();
            long plus = 0;
            for (double s : spec.values)
                if (s > lambda) ++plus;
            if (grid.size() <= kDirectCountLimit) {
                // count both signs on the assembled H, independently of the Gram route
                const DenseOperator h = build_composite(grid, config.a, config.lambda_domain, config.omega_domain, CompositeKind::h);
                long direct_plus = 0, direct_minus = 0;
                for (double mu : hermitian_eigenvalues(h.matrix)) {
                    if (mu > lambda) ++direct_plus;
                    if (mu < -lambda) ++direct_minus;
                }
                ++direct_counts;
                if (direct_plus != direct_minus || direct_plus != plus) {
                    pairing_ok = false;
                    pairing_detail = "at alpha=" + fmt(alpha) + ": n+=" + std::to_string(direct_plus) +
                                     " n-=" + std::to_string(direct_minus) + " gram n+=" + std::to_string(plus);
                }
            }
            measured[0] = static_cast<double>(plus);
            break;
        }
        case Experiment::trace_t:
            for (std::size_t i = 0; i < count; ++i) measured[i] = measure_trace_t(config, grid, config.functions[i]);
            break;
        case Experiment::hs_norm:
            measured[0] = g_frobenius_squared(grid, config.a, config.lambda_domain, config.omega_domain);
            break;
        default:
            throw InputError("not a grid sweep: " + to_string(config.experiment));
        }

        for (std::size_t i = 0; i < count; ++i) {
            SweepRecord r = base;
            r.measured = measured[i];
            r.predicted = evaluate_prediction(predictions[i], config.dimension(), alpha);
            result.series[i].records.push_back(r);
            if (log)
                log("alpha=" + fmt(alpha) + " N=" + std::to_string(grid.n) + " [" + result.series[i].label +
                    "] measured=" + fmt(r.measured) + " predicted=" + fmt(r.predicted) +
                    (r.gated ? " gate_margin=" + fmt(r.gate_margin) : ""));
        }
    }

    for (auto& s : result.series) finish_series(s, config, result.checks);
    if (config.experiment == Experiment::count) {
        if (pairing_ok)
            pairing_detail = "n+ == n- on the assembled H at " + std::to_string(direct_counts) + " alphas (grids up to " +
                             std::to_string(kDirectCountLimit) + " points); larger grids rely on the Gram route";
        result.checks.push_back({"n_plus_equals_n_minus", pairing_ok && direct_counts > 0, pairing_detail});
    }
    return result;
}

struct WilfPoint {
    std::vector<double> eigenvalues;
    int size = 0;
};

WilfPoint wilf_spectrum(const SweepConfig& config, double b_hi, int nodes_per_panel) {
    const HankelKernel kernel = config.hankel.kernel == "zero" ? HankelKernel::zero() : HankelKernel::carleman_kernel();
    const int panels = hankel_panel_count(config.hankel.a_lo, b_hi);
    const DenseOperator m = build_truncated_hankel(config.hankel.a_lo, b_hi, kernel, panels * nodes_per_panel);
    const Eigen::VectorXd ev = hermitian_eigenvalues(Eigen::MatrixXd(m.matrix.real()));
    return {{ev.data(), ev.data() + ev.size()}, static_cast<int>(m.matrix.rows())};
}

long count_above(const std::vector<double>& ev, double lambda) {
    return std::count_if(ev.begin(), ev.end(), [lambda](double v) { return v > lambda; });
}

SweepResult run_wilf(const SweepConfig& config, const Logger& log) {
    SweepResult result;
    result.experiment = Experiment::wilf;
    result.dimension = 1;
    std::vector<double> thresholds = config.thresholds;
    std::sort(thresholds.begin(), thresholds.end());
    result.series.resize(thresholds.size());
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        result.series[i].label = "lambda=" + fmt(thresholds[i]);
        result.series[i].predicted_a = kNaN;
    }

    bool norm_ok = true, monotone_ok = true;
    std::string norm_detail, monotone_detail = "counts nonincreasing in lambda at every b";
    double previous_norm = 0.0;
    for (double b_hi : config.alphas) {
        const WilfPoint p = wilf_spectrum(config, b_hi, config.hankel.nodes_per_panel);
        const double norm = std::max(std::abs(p.eigenvalues.front()), std::abs(p.eigenvalues.back()));
        SweepRecord base;
        base.alpha = b_hi;
        base.n = p.size;
        base.predicted = kNaN;
        base.gate_margin = kNaN;
        const bool gated = config.gate_scope == GateScope::all ||
                           (config.gate_scope == GateScope::largest && b_hi == config.alphas.back());
        if (gated) {
            const WilfPoint fine = wilf_spectrum(config, b_hi, 2 * config.hankel.nodes_per_panel);
            const double fine_norm = std::max(std::abs(fine.eigenvalues.front()), std::abs(fine.eigenvalues.back()));
            const double change = std::abs(fine_norm - norm) / std::max(norm, 1e-300);
            base.gated = true;
            base.gate_margin = config.gate_tolerance - change;
            bool same_counts = true;
            for (double lambda : thresholds)
                same_counts = same_counts && count_above(fine.eigenvalues, lambda) == count_above(p.eigenvalues, lambda);
            if (!(change < config.gate_tolerance) || !same_counts) {
                base.accepted = false;
                base.diagnostic = "node-doubling gate failed: norm changed by " + fmt(change) +
                                  (same_counts ? "" : ", counts changed");
            }
        }
        if (!(norm < std::numbers::pi)) {
            norm_ok = false;
            norm_detail += " b=" + fmt(b_hi) + ":" + fmt(norm);
        }
        if (norm < previous_norm) {
            norm_ok = false;
            norm_detail += " norm decreased at b=" + fmt(b_hi);
        }
        previous_norm = norm;
        long previous_count = std::numeric_limits<long>::max();
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            SweepRecord r = base;
            const long c = count_above(p.eigenvalues, thresholds[i]);
            r.measured = static_cast<double>(c);
            if (c > previous_count) {
                monotone_ok = false;
                monotone_detail = "count increases with lambda at b=" + fmt(b_hi);
            }
            previous_count = c;
            (r.accepted ? result.series[i].records : result.series[i].rejected).push_back(r);
        }
        if (log) {
            std::string line = "b=" + fmt(b_hi) + " n=" + std::to_string(p.size) + " norm=" + fmt(norm);
            for (double lambda : thresholds) line += " count(" + fmt(lambda) + ")=" + std::to_string(count_above(p.eigenvalues, lambda));
            log(line);
        }
    }

    for (auto& s : result.series) finish_series(s, config, result.checks);
    bool slopes_ok = true;
    std::string slopes = "slopes:";
    for (std::size_t i = 0; i < result.series.size(); ++i) {
        const auto& f = result.series[i].fit;
        slopes += " " + result.series[i].label + "=" + (f ? fmt(f->a) : std::string("n/a"));
        if (!f) slopes_ok = false;
        else if (i > 0 && result.series[i - 1].fit && !(f->a < result.series[i - 1].fit->a)) slopes_ok = false;
    }
    result.checks.push_back({"slope_decreasing_in_lambda", slopes_ok, slopes});
    result.checks.push_back({"norm_below_pi_and_increasing", norm_ok, norm_ok ? "operator norm < pi at every b" : norm_detail});
    result.checks.push_back({"count_monotone_in_lambda", monotone_ok, monotone_detail});
    return result;
}

} // namespace

void validate(const SweepConfig& config) {
    const auto& al = config.alphas;
    if (al.empty()) throw InputError("alphas must not be empty");
    for (std::size_t i = 1; i < al.size(); ++i)
        if (!(al[i] > al[i - 1])) throw InputError("alphas must be strictly increasing");
    if (fits(config.experiment) && al.size() < 4) throw InputError("alphas: a fit needs at least 4 values");
    if (config.experiment == Experiment::growth_suite && al.size() < 2)
        throw InputError("alphas: the growth suite needs at least 2 values");
    if (config.lambda_domain.dimension() != config.omega_domain.dimension())
        throw InputError("lambda_domain and omega_domain have different dimensions");
    if (!(config.gate_tolerance > 0.0)) throw InputError("gate_tolerance must be positive");
    if (!(config.verdict_tolerance >= 0.0)) throw InputError("verdict_tolerance must be nonnegative");

    if (config.experiment == Experiment::wilf) {
        if (!(config.hankel.a_lo >= 0.0)) throw InputError("grid.hankel.a_lo must be nonnegative");
        if (config.hankel.kernel != "carleman" && config.hankel.kernel != "zero")
            throw InputError("grid.hankel.kernel must be carleman or zero");
        if (config.hankel.kernel == "carleman" && config.hankel.a_lo == 0.0)
            throw InputError("grid.hankel.a_lo must be positive for the Carleman kernel");
        if (config.hankel.nodes_per_panel < 2) throw InputError("grid.hankel.nodes_per_panel must be >= 2");
        if (!(al.front() > config.hankel.a_lo)) throw InputError("alphas (b_hi) must exceed a_lo");
        if (config.thresholds.empty()) throw InputError("wilf needs at least one threshold");
        for (double t : config.thresholds)
            if (!(t > 0.0)) throw InputError("thresholds must be positive");
        return;
    }

    if (config.dimension() == 2 && config.boundary_nodes < 8) throw InputError("grid.boundary_nodes must be >= 8 in 2D");
    if (config.dimension() == 1 && config.boundary_nodes < 1) throw InputError("grid.boundary_nodes must be positive");
    if (config.experiment == Experiment::trace_h || config.experiment == Experiment::trace_t) {
        if (config.functions.empty()) throw InputError("g: at least one test function is needed");
        if (config.experiment == Experiment::trace_t)
            for (const auto& g : config.functions)
                if (!g.is_polynomial()) throw InputError("g: trace_T needs a monomial or polynomial test function");
    }
    if (config.experiment == Experiment::count) {
        if (config.thresholds.empty() || !(config.thresholds.front() > 0.0))
            throw InputError("g: count needs an indicator threshold lambda > 0");
    }
    for (double alpha : al) grid_for(config, alpha);
    for (double alpha : config.hs_alphas) grid_for(config, alpha);
}

GridRequirements grid_requirements(const SweepConfig& config) {
    GridRequirements req;
    req.dimension = config.dimension();
    req.x_extent = config.lambda_domain.extent();
    req.xi_extent = config.omega_domain.extent();
    for (const SeparableSymbol* s : {&config.a, &config.weight}) {
        req.x_extent = std::max(req.x_extent, finite_or_zero(s->x_extent()));
        req.xi_extent = std::max(req.xi_extent, finite_or_zero(s->xi_extent()));
    }
    return req;
}

Grid grid_for(const SweepConfig& config, double alpha) { return make_grid(config.grid, grid_requirements(config), alpha); }

double gate_change(const SweepConfig& config, const Grid& grid) {
    const double coarse = g_frobenius_squared(grid, config.a, config.lambda_domain, config.omega_domain);
    const double fine = g_frobenius_squared(refine(grid), config.a, config.lambda_domain, config.omega_domain);
    if (coarse == 0.0 && fine == 0.0) return 0.0;
    return std::abs(fine - coarse) / std::max(std::abs(coarse), std::abs(fine));
}

Prediction sweep_prediction(const SweepConfig& config, std::size_t index, double alpha) {
    PredictionRequest req;
    req.a = config.a;
    req.weight = config.weight;
    req.boundary_nodes = config.boundary_nodes;
    switch (config.experiment) {
    case Experiment::trace_h:
        req.kind = PredictionKind::trace_h;
        req.g = config.functions.at(index);
        break;
    case Experiment::trace_t:
        req.kind = PredictionKind::trace_t;
        req.g = config.functions.at(index);
        break;
    case Experiment::count:
        req.kind = PredictionKind::count;
        req.lambda = config.thresholds.front();
        break;
    case Experiment::hs_norm: {
        // ||G||_S2^2 = (1/2) tr H^2
        req.kind = PredictionKind::trace_h;
        req.g = TestFunction::monomial(2);
        Prediction p = predict(req, config.lambda_domain, config.omega_domain, alpha);
        p.value *= 0.5;
        p.log_coefficient *= 0.5;
        return p;
    }
    default:
        throw InputError("no predictor for experiment " + to_string(config.experiment));
    }
    return predict(req, config.lambda_domain, config.omega_domain, alpha);
}

SweepResult run_sweep(const SweepConfig& config, const Logger& log) {
    validate(config);
    if (config.experiment == Experiment::wilf) return run_wilf(config, log);
    return run_grid_sweep(config, log);
}

} // namespace hankel

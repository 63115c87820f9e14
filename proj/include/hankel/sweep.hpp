#pragma once

#include "hankel/coefficients.hpp"
#include "hankel/fit.hpp"
#include "hankel/geometry.hpp"
#include "hankel/grid.hpp"
#include "hankel/symbol.hpp"
#include "hankel/test_function.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hankel {

enum class Experiment { trace_h, trace_t, count, wilf, hs_norm, identity_suite, growth_suite };

std::string to_string(Experiment e);

/// Which alphas re-run the doubling-N gate.
enum class GateScope { all, largest, none };

struct HankelSettings {
    double a_lo = 1.0;
    std::string kernel = "carleman";
    int nodes_per_panel = 16;
};

struct SweepConfig {
    Experiment experiment = Experiment::trace_h;
    Domain lambda_domain = Domain::interval(0.0, 1.0);
    Domain omega_domain = Domain::interval(-1.0, 1.0);
    SeparableSymbol a = SeparableSymbol::one();
    /// b in tr(Op(b) g(T)) and in the product check of the growth suite
    SeparableSymbol weight = SeparableSymbol::one();
    /// Test functions for trace_h / trace_t; one output series each.
    std::vector<TestFunction> functions = {TestFunction::monomial(2)};
    /// Counting thresholds (count uses the first, wilf all of them).
    std::vector<double> thresholds = {0.25};
    /// alpha list, or b_hi list for wilf
    std::vector<double> alphas;
    /// growth suite: alphas for the ||G||^2_S2 / log alpha drift check (empty: top octave of `alphas`)
    std::vector<double> hs_alphas;
    GridPolicy grid;
    int boundary_nodes = 256;
    double gate_tolerance = 0.005;
    GateScope gate_scope = GateScope::all;
    HankelSettings hankel;
    /// Relative tolerance on the fitted log coefficient.
    double verdict_tolerance = 0.10;
    /// Relative tolerance on the fitted volume coefficient (trace_t).
    double volume_tolerance = 0.02;
    /// Wilf: minimal r^2 of the affine fit in log b.
    double r2_threshold = 0.98;

    int dimension() const { return lambda_domain.dimension(); }
};

/// Throws InputError on any violated precondition (before computation starts).
void validate(const SweepConfig& config);

struct SweepRecord {
    double alpha = 0.0;
    int n = 0; ///< grid points per axis, or Nystrom size for wilf
    double measured = 0.0;
    double predicted = 0.0;
    /// gate tolerance minus the relative change under refinement (NaN when not gated)
    double gate_margin = 0.0;
    bool gated = false;
    bool accepted = true;
    std::string diagnostic;
};

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Series {
    std::string label;
    std::vector<SweepRecord> records; ///< accepted records, sorted by alpha
    std::vector<SweepRecord> rejected;
    std::optional<LogLawFit> fit;
    double predicted_a = 0.0;
    std::optional<double> predicted_d;
    double relative_error = 0.0;
    std::optional<double> relative_error_d;
    std::string verdict = "insufficient_data";
};

struct SweepResult {
    Experiment experiment = Experiment::trace_h;
    int dimension = 1;
    std::vector<Series> series;
    std::vector<Check> checks;
    std::vector<std::string> warnings;

    bool passed() const;
};

using Logger = std::function<void(const std::string&)>;

/// trace_h, trace_t, count, wilf and hs_norm sweeps. Each grid point is gated by re-running
/// tr H^2 on the doubled grid (Nystrom size for wilf); rejected points are kept with a diagnostic.
SweepResult run_sweep(const SweepConfig& config, const Logger& log = {});

/// Extents the grid must accommodate for this configuration.
GridRequirements grid_requirements(const SweepConfig& config);
Grid grid_for(const SweepConfig& config, double alpha);

/// Relative change of tr H^2 under N -> 2N at this grid.
double gate_change(const SweepConfig& config, const Grid& grid);

/// Predicted value for the experiment at alpha (series `index` picks the test function).
Prediction sweep_prediction(const SweepConfig& config, std::size_t index, double alpha);

} // namespace hankel

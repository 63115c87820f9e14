#pragma once

#include "hankel/suites.hpp"
#include "hankel/sweep.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hankel {

struct OutputOptions {
    bool deterministic = true;
    /// Wall-clock seconds; written to summary.json only for non-deterministic runs.
    std::optional<double> elapsed_seconds;
};

/// Renders a number with 17 significant digits ("nan"/"inf" for non-finite values).
std::string format_number(double v);

std::string sweep_csv(const Series& series);
std::string sweep_summary_json(const SweepResult& result, const OutputOptions& options);
std::string plot_script(const SweepResult& result);

/// sweep.csv (plus sweep_<k>.csv for further series), summary.json and plot.gp. Series without
/// accepted records get no CSV. All files are written to temporaries and renamed at the end.
std::vector<std::filesystem::path> write_outputs(const SweepResult& result, const std::filesystem::path& dir,
                                                 const OutputOptions& options = {});

/// summary.json for a suite, plus growth.csv for the growth suite.
std::vector<std::filesystem::path> write_suite_outputs(const SuiteReport& report, const std::filesystem::path& dir,
                                                       const OutputOptions& options = {});

} // namespace hankel

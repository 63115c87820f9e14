#pragma once

#include "hankel/sweep.hpp"

#include <filesystem>
#include <string>

namespace hankel {

struct RunConfig {
    SweepConfig sweep;
    std::filesystem::path output_dir = "out";
    bool deterministic = false;
    bool verbose = false;
};

/// Parses and validates a JSON run configuration. Unknown keys, wrong types and malformed JSON
/// throw ConfigError naming the key path; violated numerical preconditions throw InputError.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text);

Experiment parse_experiment(const std::string& name);

} // namespace hankel

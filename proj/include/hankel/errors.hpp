#pragma once

#include <stdexcept>
#include <string>

namespace hankel {

/// Violated precondition on user-supplied values (exit-code class 2 at the CLI).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Failure inside a numerical routine: non-convergence, rank deficiency (exit-code class 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or schema-violating configuration (exit-code class 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hankel

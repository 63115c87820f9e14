#pragma once

#include <vector>

namespace hankel {

/// Least-squares fit of
///   d = 1: y = A log(alpha) + B            (+ D alpha   with `volume_term`)
///   d = 2: y = A alpha log(alpha) + B alpha + C   (+ D alpha^2)
/// For d = 1 the constant and the alpha^(d-1) column coincide, so C is fixed at zero.
struct LogLawFit {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    bool has_c = false;
    bool has_d = false;
    double r2 = 0.0;
    /// Standard error of A from the residual variance (infinite when there are no spare points).
    double a_standard_error = 0.0;
    int points = 0;
};

/// Needs at least four distinct alphas > 0; a rank-deficient design throws NumericalError.
LogLawFit fit_log_law(const std::vector<double>& alpha, const std::vector<double>& y, int dimension,
                      bool volume_term = false);

/// Evaluates the fitted model at alpha.
double evaluate(const LogLawFit& fit, double alpha, int dimension);

} // namespace hankel

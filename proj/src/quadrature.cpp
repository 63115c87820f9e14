#include "hankel/quadrature.hpp"

#include "hankel/errors.hpp"

#include <numbers>

namespace hankel {

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
    if (n < 1) throw InputError("Gauss-Legendre rule needs at least one node");
    Eigen::VectorXd x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute the derivative at the converged root
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        x(i) = -z;
        x(n - 1 - i) = z;
        w(i) = w(n - 1 - i) = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

} // namespace hankel

#include "hankel/fit.hpp"

#include "hankel/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace hankel {

namespace {

std::vector<double> design_row(double alpha, int dimension, bool volume_term) {
    const double l = std::log(alpha);
    if (dimension == 1) {
        std::vector<double> row = {l, 1.0};
        if (volume_term) row.push_back(alpha);
        return row;
    }
    std::vector<double> row = {alpha * l, alpha, 1.0};
    if (volume_term) row.push_back(alpha * alpha);
    return row;
}

} // namespace

LogLawFit fit_log_law(const std::vector<double>& alpha, const std::vector<double>& y, int dimension, bool volume_term) {
    if (dimension != 1 && dimension != 2) throw InputError("fit dimension must be 1 or 2");
    if (alpha.size() != y.size()) throw InputError("fit needs as many values as alphas");
    if (alpha.size() < 4) throw InputError("fit needs at least 4 points");
    if (std::set<double>(alpha.begin(), alpha.end()).size() != alpha.size())
        throw InputError("fit needs distinct alpha values");
    for (double a : alpha)
        if (!(a > 0.0)) throw InputError("fit needs positive alpha values");

    const auto n = static_cast<Eigen::Index>(alpha.size());
    const auto p = static_cast<Eigen::Index>(design_row(alpha[0], dimension, volume_term).size());
    Eigen::MatrixXd x(n, p);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto row = design_row(alpha[static_cast<std::size_t>(i)], dimension, volume_term);
        for (Eigen::Index j = 0; j < p; ++j) x(i, j) = row[static_cast<std::size_t>(j)];
        rhs(i) = y[static_cast<std::size_t>(i)];
    }

    // column scaling keeps the normal matrix well conditioned across alpha^2 and log alpha
    Eigen::VectorXd scale(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        scale(j) = x.col(j).cwiseAbs().maxCoeff();
        if (scale(j) == 0.0) throw NumericalError("fit design has an all-zero column");
    }
    const Eigen::MatrixXd xs = x * scale.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd normal = xs.transpose() * xs;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normal, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (!(lo > 1e-12 * hi)) throw NumericalError("fit design is rank-deficient (alpha values too clustered)");

    const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
    const Eigen::VectorXd coef_scaled = ldlt.solve(xs.transpose() * rhs);
    const Eigen::VectorXd coef = coef_scaled.cwiseQuotient(scale);

    LogLawFit fit;
    fit.points = static_cast<int>(n);
    fit.a = coef(0);
    fit.b = coef(1);
    Eigen::Index next = 2;
    if (dimension == 2) {
        fit.has_c = true;
        fit.c = coef(next++);
    }
    if (volume_term) {
        fit.has_d = true;
        fit.d = coef(next++);
    }

    const Eigen::VectorXd residual = rhs - x * coef;
    const double ss_res = residual.squaredNorm();
    const double ss_tot = (rhs.array() - rhs.mean()).matrix().squaredNorm();
    if (ss_tot > 0.0) fit.r2 = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    else fit.r2 = ss_res <= 1e-24 * std::max(1.0, rhs.squaredNorm()) ? 1.0 : 0.0;

    if (n > p) {
        const double sigma2 = ss_res / static_cast<double>(n - p);
        const Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(p, p));
        fit.a_standard_error = std::sqrt(std::max(0.0, sigma2 * inv(0, 0))) / scale(0);
    } else {
        fit.a_standard_error = std::numeric_limits<double>::infinity();
    }
    return fit;
}

double evaluate(const LogLawFit& fit, double alpha, int dimension) {
    const double l = std::log(alpha);
    if (dimension == 1) return fit.a * l + fit.b + (fit.has_d ? fit.d * alpha : 0.0);
    return fit.a * alpha * l + fit.b * alpha + fit.c + (fit.has_d ? fit.d * alpha * alpha : 0.0);
}

} // namespace hankel

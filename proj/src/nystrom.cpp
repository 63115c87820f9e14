#include "hankel/nystrom.hpp"

#include "hankel/errors.hpp"
#include "hankel/quadrature.hpp"

#include <cmath>

namespace hankel {

HankelKernel HankelKernel::carleman_kernel() { return {[](double t) { return 1.0 / t; }, true, "carleman"}; }

HankelKernel HankelKernel::custom(std::function<double(double)> k, std::string label) {
    if (!k) throw InputError("Hankel kernel is empty");
    return {std::move(k), false, std::move(label)};
}

HankelKernel HankelKernel::zero() { return {[](double) { return 0.0; }, false, "zero"}; }

int hankel_panel_count(double a_lo, double b_hi) {
    if (a_lo <= 0.0) return std::max(1, static_cast<int>(std::ceil(std::log2(b_hi))) + 8);
    return std::max(1, static_cast<int>(std::ceil(std::log2(b_hi / a_lo) - 1e-12)));
}

DenseOperator build_truncated_hankel(double a_lo, double b_hi, const HankelKernel& kernel, int n) {
    if (!(a_lo >= 0.0) || !(b_hi > a_lo)) throw InputError("truncated Hankel operator needs 0 <= a_lo < b_hi");
    if (kernel.carleman && a_lo == 0.0)
        throw InputError("Carleman kernel on (0, b) is not compact; a_lo must be positive");
    if (n < 2) throw InputError("Nystrom discretisation needs at least two nodes");

    // graded edges from a_lo; with a_lo = 0 the first edge is b_hi 2^-(panels-1) and [0, e1] is one panel
    const int panels = hankel_panel_count(a_lo, b_hi);
    std::vector<double> edges(static_cast<std::size_t>(panels) + 1);
    if (a_lo > 0.0) {
        const double rho = std::pow(b_hi / a_lo, 1.0 / panels);
        for (int m = 0; m <= panels; ++m) edges[static_cast<std::size_t>(m)] = a_lo * std::pow(rho, m);
    } else {
        edges[0] = 0.0;
        for (int m = 1; m <= panels; ++m) edges[static_cast<std::size_t>(m)] = b_hi * std::pow(2.0, m - panels);
    }
    edges.back() = b_hi;

    const int per_panel = std::max(2, (n + panels - 1) / panels);
    const auto [gx, gw] = gauss_legendre(per_panel);
    const Eigen::Index size = Eigen::Index(panels) * per_panel;
    Eigen::VectorXd x(size), sw(size);
    for (int p = 0; p < panels; ++p) {
        const double lo = edges[static_cast<std::size_t>(p)], hi = edges[static_cast<std::size_t>(p) + 1];
        for (int k = 0; k < per_panel; ++k) {
            const Eigen::Index i = Eigen::Index(p) * per_panel + k;
            x(i) = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx(k);
            sw(i) = std::sqrt(0.5 * (hi - lo) * gw(k));
        }
    }

    DenseOperator op;
    op.kind = OperatorKind::hankel_nystrom;
    op.matrix.resize(size, size);
    for (Eigen::Index j = 0; j < size; ++j)
        for (Eigen::Index i = 0; i <= j; ++i) {
            const double v = sw(i) * kernel.k(x(i) + x(j)) * sw(j);
            op.matrix(i, j) = v;
            op.matrix(j, i) = v;
        }
    return op;
}

} // namespace hankel

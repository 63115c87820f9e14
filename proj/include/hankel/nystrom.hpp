#pragma once

#include "hankel/operators.hpp"

#include <functional>
#include <string>

namespace hankel {

struct HankelKernel {
    /// k(t), continuous on [2 a_lo, 2 b_hi]
    std::function<double(double)> k;
    bool carleman = false;
    std::string label;

    static HankelKernel carleman_kernel();
    static HankelKernel custom(std::function<double(double)> k, std::string label = "custom");
    static HankelKernel zero();
};

/// Panel edges a_lo rho^m with rho <= 2, so the panel count grows like log2(b_hi / a_lo).
int hankel_panel_count(double a_lo, double b_hi);

/// Symmetric Nystrom matrix M_ij = sqrt(w_i) k(x_i + x_j) sqrt(w_j) for the Hankel operator with
/// kernel k(x + y) on (a_lo, b_hi). About `n` nodes are spread evenly over the graded
/// Gauss-Legendre panels (at least two per panel).
DenseOperator build_truncated_hankel(double a_lo, double b_hi, const HankelKernel& kernel, int n);

} // namespace hankel

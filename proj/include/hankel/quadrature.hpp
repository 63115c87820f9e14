#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace hankel {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on P_n.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n);

namespace detail {

// Kronrod 15 / Gauss 7 on the half-interval, abscissae in decreasing order.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
QuadratureResult gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <typename F>
QuadratureResult adaptive(F& f, double a, double b, double abs_tol, double rel_tol,
                          QuadratureResult whole, int depth) {
    const double mid = 0.5 * (a + b);
    const QuadratureResult left = gk15(f, a, mid);
    const QuadratureResult right = gk15(f, mid, b);
    QuadratureResult refined{left.value + right.value, left.error + right.error};
    const double tol = std::max(abs_tol, rel_tol * std::abs(refined.value));
    if (refined.error <= tol || depth <= 0 || std::abs(refined.value - whole.value) <= 0.1 * tol ||
        (b - a) < 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
        return refined;
    }
    const QuadratureResult l = adaptive(f, a, mid, 0.5 * abs_tol, rel_tol, left, depth - 1);
    const QuadratureResult r = adaptive(f, mid, b, 0.5 * abs_tol, rel_tol, right, depth - 1);
    return {l.value + r.value, l.error + r.error};
}

} // namespace detail

/// Recursive adaptive Gauss-Kronrod (7/15). Endpoints are never evaluated, so integrable
/// endpoint singularities and removable 0/0 forms are safe.
template <typename F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-12, int max_depth = 40) {
    if (a == b) return {};
    auto whole = detail::gk15(f, a, b);
    return detail::adaptive(f, a, b, abs_tol, rel_tol, whole, max_depth);
}

} // namespace hankel

#include "hankel/grid.hpp"

#include "hankel/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hankel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1e-12;

int minimal_points(double half_width, double alpha, double xi_extent, double margin) {
    return static_cast<int>(std::ceil(2.0 * half_width * alpha * xi_extent / (margin * kPi) - kSlack));
}

} // namespace

Point Grid::point(Eigen::Index j) const {
    if (dimension == 1) return {coordinate(static_cast<int>(j)), 0.0};
    return {coordinate(static_cast<int>(j % n)), coordinate(static_cast<int>(j / n))};
}

Point Grid::frequency_point(Eigen::Index k) const {
    if (dimension == 1) return {frequency(static_cast<int>(k)), 0.0};
    return {frequency(static_cast<int>(k % n)), frequency(static_cast<int>(k / n))};
}

int next_power_of_two(double n) {
    int p = 1;
    while (p < n) {
        if (p > (1 << 29)) throw InputError("grid size overflow");
        p <<= 1;
    }
    return p;
}

void check_nyquist(const Grid& grid, double xi_extent) {
    const double limit = kNyquistLimit * kPi * grid.n / (2.0 * grid.half_width);
    if (grid.alpha * xi_extent > limit * (1.0 + kSlack)) {
        const int minimal = minimal_points(grid.half_width, grid.alpha, xi_extent, kNyquistLimit);
        std::ostringstream msg;
        msg << "Nyquist violation at alpha=" << grid.alpha << ": alpha*xi_max=" << grid.alpha * xi_extent
            << " exceeds 0.8*pi*N/(2L)=" << limit << " with N=" << grid.n << ", L=" << grid.half_width
            << "; minimal N = " << minimal << " (power of two: " << next_power_of_two(minimal) << ")";
        throw InputError(msg.str());
    }
}

void check_padding(const Grid& grid, double x_extent) {
    if (x_extent > 0.5 * grid.half_width * (1.0 + kSlack)) {
        std::ostringstream msg;
        msg << "padding violation: x-extent " << x_extent << " exceeds L/2 = " << 0.5 * grid.half_width
            << "; need half_width >= " << 2.0 * x_extent;
        throw InputError(msg.str());
    }
}

Grid make_grid(const GridPolicy& policy, const GridRequirements& req, double alpha) {
    if (req.dimension != 1 && req.dimension != 2) throw InputError("grid dimension must be 1 or 2");
    if (!(alpha >= 1.0)) throw InputError("alpha must be >= 1");
    if (!(policy.margin > 0.0) || policy.margin > kNyquistLimit) throw InputError("grid margin must lie in (0, 0.8]");
    if (policy.fixed_spacing && policy.align_lattice)
        throw InputError("grid policies fixed_spacing and align_lattice are mutually exclusive");
    if (!(req.xi_extent > 0.0)) throw InputError("frequency extent must be positive");

    Grid grid;
    grid.dimension = req.dimension;
    grid.alpha = alpha;
    const double l_min = std::max(policy.half_width, 2.0 * req.x_extent);
    const double scaled = alpha * req.xi_extent;

    if (policy.fixed_spacing) {
        const double h = policy.margin * kPi / scaled;
        grid.n = next_power_of_two(2.0 * l_min / h - kSlack);
        grid.half_width = 0.5 * grid.n * h;
    } else {
        grid.half_width = l_min;
        if (policy.align_lattice) {
            // alpha xi_max L / pi in Z + 1/2 keeps lattice points away from the edge of alpha Omega
            const double j = std::ceil(scaled * l_min / kPi - 0.5 - kSlack);
            grid.half_width = kPi * (j + 0.5) / scaled;
        }
        if (policy.points > 0) {
            if (policy.points != next_power_of_two(policy.points))
                throw InputError("grid points must be a power of two");
            grid.n = policy.points;
        } else {
            grid.n = std::max(8, next_power_of_two(minimal_points(grid.half_width, alpha, req.xi_extent, policy.margin)));
        }
    }
    if (grid.n > policy.max_points) {
        std::ostringstream msg;
        msg << "grid at alpha=" << alpha << " needs N=" << grid.n << " per axis, above max_points=" << policy.max_points;
        throw InputError(msg.str());
    }
    check_nyquist(grid, req.xi_extent);
    check_padding(grid, req.x_extent);
    return grid;
}

Grid refine(const Grid& grid) {
    Grid g = grid;
    g.n *= 2;
    return g;
}

std::string describe(const Grid& grid) {
    std::ostringstream s;
    s << "d=" << grid.dimension << " L=" << grid.half_width << " N=" << grid.n << " h=" << grid.spacing()
      << " alpha=" << grid.alpha;
    return s.str();
}

} // namespace hankel

#pragma once

#include "hankel/geometry.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace hankel {

/// Periodic grid on [-L, L]^d with N points per axis, x_j = -L + j h. Flat index j = i0 + N i1
/// (first coordinate fastest). Frequencies follow FFT order: DFT index k maps to eta = pi k' / L
/// with k' = k for k < N/2 and k - N otherwise.
struct Grid {
    int dimension = 1;
    double half_width = 2.0;
    int n = 64;
    double alpha = 1.0;

    double spacing() const { return 2.0 * half_width / n; }
    Eigen::Index size() const { return dimension == 1 ? n : Eigen::Index(n) * n; }
    double coordinate(int i) const { return -half_width + i * spacing(); }
    double frequency(int k) const { return 3.14159265358979323846 * (k < n / 2 ? k : k - n) / half_width; }
    /// Spatial point of flat index j.
    Point point(Eigen::Index j) const;
    /// Frequency eta of flat DFT index k.
    Point frequency_point(Eigen::Index k) const;
};

/// How the grid is chosen for a given alpha.
struct GridPolicy {
    /// Minimal box half-width L; the padding check may force a larger one.
    double half_width = 2.0;
    /// Fraction of the Nyquist frequency that alpha * |xi|_inf may reach. At most 0.8.
    double margin = 0.8;
    /// Explicit N (power of two); 0 picks the smallest admissible N.
    int points = 0;
    /// Upper bound on N per axis.
    int max_points = 1 << 16;
    /// Hold h alpha fixed (h = margin pi / (alpha xi_max)) and grow L to the next power of two in N.
    bool fixed_spacing = false;
    /// Stretch L so that alpha xi_max lies halfway between two lattice frequencies.
    bool align_lattice = false;
};

/// Hard limit from the Nyquist invariant.
inline constexpr double kNyquistLimit = 0.8;

/// Smallest power of two >= n (n >= 1).
int next_power_of_two(double n);

/// Extents that the grid has to accommodate.
struct GridRequirements {
    int dimension = 1;
    /// sup-norm extent of Lambda together with the x-support of the symbol
    double x_extent = 0.0;
    /// sup-norm extent of Omega together with the finite xi-support of the symbol
    double xi_extent = 0.0;
};

/// Builds the grid for `alpha` under `policy`. Throws InputError when the Nyquist or padding
/// invariants cannot be met; the message names the minimal N.
Grid make_grid(const GridPolicy& policy, const GridRequirements& req, double alpha);

/// Same L and alpha, twice the points per axis.
Grid refine(const Grid& grid);

/// Throws InputError unless alpha xi_extent <= 0.8 pi N / (2L).
void check_nyquist(const Grid& grid, double xi_extent);

/// Throws InputError unless x_extent <= L / 2.
void check_padding(const Grid& grid, double x_extent);

std::string describe(const Grid& grid);

} // namespace hankel

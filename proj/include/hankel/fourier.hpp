#pragma once

#include "hankel/grid.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <complex>
#include <vector>

namespace hankel {

/// Discrete Fourier transform on a grid, applied in place to a flat vector of length N^d.
/// `forward` is unnormalised and `inverse` carries 1/N^d, so inverse(forward(v)) == v.
class GridFFT {
public:
    explicit GridFFT(const Grid& grid);

    void forward(Eigen::Ref<Eigen::VectorXcd> v);
    void inverse(Eigen::Ref<Eigen::VectorXcd> v);

    /// v <- F^-1 diag(multiplier) F v, multiplier in DFT order.
    void apply_multiplier(const Eigen::VectorXcd& multiplier, Eigen::Ref<Eigen::VectorXcd> v);

private:
    void transform(Eigen::Ref<Eigen::VectorXcd> v, bool inverse);

    int dimension_;
    int n_;
    Eigen::FFT<double> fft_;
    std::vector<std::complex<double>> in_;
    std::vector<std::complex<double>> out_;
};

/// First column of the circulant F^-1 diag(m) F, i.e. the inverse DFT of m.
Eigen::VectorXcd circulant_column(const Grid& grid, const Eigen::VectorXcd& multiplier);

/// Index of the circulant entry C(row, col) in its first column (periodic difference per axis).
inline Eigen::Index circulant_offset(const Grid& grid, Eigen::Index row, Eigen::Index col) {
    const Eigen::Index n = grid.n;
    if (grid.dimension == 1) return ((row - col) % n + n) % n;
    const Eigen::Index dx = ((row % n - col % n) % n + n) % n;
    const Eigen::Index dy = ((row / n - col / n) % n + n) % n;
    return dx + n * dy;
}

} // namespace hankel

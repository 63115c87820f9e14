#pragma once

#include "hankel/operators.hpp"
#include "hankel/test_function.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace hankel {

enum class SpectralKind { eigen, singular };

/// Sorted spectrum. For singular data describing H = G + G*, the eigenvalues of H are
/// +-values plus `kernel_dimension` zeros.
struct SpectralData {
    std::vector<double> values;
    SpectralKind kind = SpectralKind::eigen;
    Eigen::Index kernel_dimension = 0;
    std::optional<Grid> grid;
};

struct EigenDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

/// Full spectrum of a self-adjoint matrix (checked to 1e-10 relative, then symmetrised).
/// Eigenvectors are computed and the residual |A v - lambda v| <= 1e-9 |A| is verified on five
/// evenly spaced pairs. Real input is accepted whenever the imaginary part is below 1e-14 of the
/// largest entry, which takes the faster real solver.
SpectralData hermitian_eigen(const Eigen::MatrixXcd& a);
SpectralData hermitian_eigen(const DenseOperator& a);
EigenDecomposition hermitian_decomposition(const Eigen::MatrixXcd& a);

/// Values only (no residual check); used where the spectrum of a large Gram block is needed.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXd& a);
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a);

/// sqrt(max(eig(A* A), 0)) from the smaller Gram block, ascending.
SpectralData singular_values(const Eigen::MatrixXcd& a);
SpectralData singular_values(const DenseOperator& a);

/// Spectrum of H = G + G* from G*G (K x K) on a grid with `total` points.
SpectralData h_spectrum_from_gram(const Eigen::MatrixXcd& g_gram, Eigen::Index total);

/// Same from the Gram blocks; takes a real path when both blocks are real.
SpectralData h_spectrum(const GramBlocks& blocks);

/// sum g(lambda_i), or sum g(s) + g(-s) over singular data. Throws InputError unless g(0) = 0.
double trace_of_function(const SpectralData& s, const TestFunction& g);

enum class SchattenP { one, two, infinity };
double schatten_norm(const Eigen::MatrixXcd& a, SchattenP p);
double schatten_norm(const DenseOperator& a, SchattenP p);

} // namespace hankel

#pragma once

#include "hankel/fourier.hpp"
#include "hankel/geometry.hpp"
#include "hankel/grid.hpp"
#include "hankel/symbol.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace hankel {

enum class OperatorKind { projection, multiplier, pdo, t, g, h, hankel_nystrom, generic };
enum class Side { left, right };
enum class CompositeKind { t, g, h };

/// Full-grid embedding or the restricted blocks (T on Lambda x Lambda, G on complement x Lambda).
enum class Layout { full, block };

using IndexList = std::vector<Eigen::Index>;

struct DenseOperator {
    OperatorKind kind = OperatorKind::generic;
    Eigen::MatrixXcd matrix;
    IndexList row_index; ///< grid indices of the rows; empty means every grid point in order
    IndexList col_index;
    std::optional<Grid> grid;
};

/// Grid points lying in the closed domain, in increasing flat index.
IndexList lambda_indices(const Grid& grid, const Domain& lambda);
/// Grid indices not in `inside` (which must be sorted).
IndexList complement_indices(const Grid& grid, const IndexList& inside);

/// phi(eta_k / alpha) over the DFT lattice.
Eigen::VectorXcd frequency_values(const Grid& grid, const Factor& phi);
/// chi_Omega(eta_k / alpha) over the DFT lattice.
Eigen::VectorXcd projection_multiplier(const Grid& grid, const Domain& omega);

DenseOperator build_projection(const Grid& grid, const Domain& omega);
DenseOperator build_multiplier(const Grid& grid, const Domain& lambda);
DenseOperator build_pdo(const Grid& grid, const SeparableSymbol& a, Side side = Side::left);

/// T = chi P Op^l(a) P chi, G = (1 - chi) P Op^l(a) P chi, H = G + G*. Assembled by applying
/// P Op^l(a) P to the K unit vectors of Lambda with FFTs. H always uses the full layout.
DenseOperator build_composite(const Grid& grid, const SeparableSymbol& a, const Domain& lambda,
                              const Domain& omega, CompositeKind kind, Layout layout = Layout::full);

/// Applies Op^l(a), its adjoint, and P to grid vectors via FFTs.
class OperatorApplier {
public:
    OperatorApplier(const Grid& grid, const SeparableSymbol& a, const Domain& omega);

    void apply_projection(Eigen::Ref<Eigen::VectorXcd> v);
    void apply_symbol(Eigen::Ref<Eigen::VectorXcd> v);
    void apply_symbol_adjoint(Eigen::Ref<Eigen::VectorXcd> v);
    /// v <- P Op^l(a) P v
    void apply_compressed(Eigen::Ref<Eigen::VectorXcd> v);

private:
    struct Term {
        Eigen::VectorXcd x_values;
        Eigen::VectorXcd xi_values;
        bool x_constant;
    };
    Grid grid_;
    GridFFT fft_;
    std::vector<Term> terms_;
    Eigen::VectorXcd projection_;
    Eigen::VectorXcd scratch_;
    Eigen::VectorXcd accumulator_;
};

/// Blocks needed for the spectra of T and G without forming G. With M = P Op^l(a) P chi:
///   t  = M restricted to Lambda x Lambda (the T block),
///   mm = (M* M) restricted to Lambda x Lambda,
/// so that G*G = mm - t* t.
struct GramBlocks {
    IndexList lambda;
    Eigen::Index total = 0; ///< N^d
    Eigen::MatrixXcd t;
    Eigen::MatrixXcd mm;
};

/// x-independent symbols use the circulant structure of P Op(a) P directly; otherwise K columns
/// are pushed through FFTs.
GramBlocks gram_blocks(const Grid& grid, const SeparableSymbol& a, const Domain& lambda, const Domain& omega);

/// G*G = mm - t* t, Hermitian-symmetrised.
Eigen::MatrixXcd g_gram(const GramBlocks& blocks);

/// ||G||_F^2 = (1/2) tr H^2 without storing any K x K block.
double g_frobenius_squared(const Grid& grid, const SeparableSymbol& a, const Domain& lambda, const Domain& omega);

/// Op^l(b) restricted to Lambda x Lambda.
Eigen::MatrixXcd pdo_block(const Grid& grid, const SeparableSymbol& b, const IndexList& lambda);

/// Largest |imaginary part| relative to the largest |entry|.
double imaginary_fraction(const Eigen::MatrixXcd& m);

} // namespace hankel

#include "hankel/spectral.hpp"

#include "hankel/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hankel {

namespace {

constexpr double kRealThreshold = 1e-14;

void check_square(Eigen::Index rows, Eigen::Index cols) {
    if (rows != cols) throw InputError("eigensolver needs a square matrix");
}

Eigen::MatrixXcd symmetrised(const Eigen::MatrixXcd& a) {
    check_square(a.rows(), a.cols());
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
        std::ostringstream msg;
        msg << "matrix is not self-adjoint: max |A - A*| = " << asym;
        throw InputError(msg.str());
    }
    return 0.5 * (a + a.adjoint());
}

template <typename Solver>
void check_info(const Solver& solver, Eigen::Index n, double norm) {
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "eigensolver did not converge (n=" << n << ", max|A|=" << norm << ")";
        throw NumericalError(msg.str());
    }
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

} // namespace

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXd& a) {
    check_square(a.rows(), a.cols());
    if (a.size() == 0) return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    check_info(solver, a.rows(), a.cwiseAbs().maxCoeff());
    return solver.eigenvalues();
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a) {
    check_square(a.rows(), a.cols());
    if (a.size() == 0) return {};
    if (imaginary_fraction(a) <= kRealThreshold) return hermitian_eigenvalues(Eigen::MatrixXd(a.real()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    check_info(solver, a.rows(), a.cwiseAbs().maxCoeff());
    return solver.eigenvalues();
}

EigenDecomposition hermitian_decomposition(const Eigen::MatrixXcd& input) {
    const Eigen::MatrixXcd a = symmetrised(input);
    EigenDecomposition out;
    if (a.size() == 0) return out;
    const double norm = a.cwiseAbs().maxCoeff();
    if (imaginary_fraction(a) <= kRealThreshold) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.real());
        check_info(solver, a.rows(), norm);
        out.values = solver.eigenvalues();
        out.vectors = solver.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
        check_info(solver, a.rows(), norm);
        out.values = solver.eigenvalues();
        out.vectors = solver.eigenvectors();
    }

    const Eigen::Index n = a.rows();
    const double op_norm = std::max(out.values.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    for (int s = 0; s < 5; ++s) {
        const Eigen::Index i = n == 1 ? 0 : (s * (n - 1)) / 4;
        const double residual = (a * out.vectors.col(i) - out.values(i) * out.vectors.col(i)).norm();
        if (residual > 1e-9 * std::max(op_norm, 1e-300) && residual > 1e-14) {
            std::ostringstream msg;
            msg << "eigenpair residual " << residual << " too large at index " << i << " (n=" << n
                << ", |A|=" << op_norm << ")";
            throw NumericalError(msg.str());
        }
    }
    return out;
}

SpectralData hermitian_eigen(const Eigen::MatrixXcd& a) {
    SpectralData s;
    s.values = to_vector(hermitian_decomposition(a).values);
    return s;
}

SpectralData hermitian_eigen(const DenseOperator& a) {
    SpectralData s = hermitian_eigen(a.matrix);
    s.grid = a.grid;
    return s;
}

SpectralData singular_values(const Eigen::MatrixXcd& a) {
    SpectralData s;
    s.kind = SpectralKind::singular;
    if (a.size() == 0) return s;
    Eigen::MatrixXcd gram = a.cols() <= a.rows() ? Eigen::MatrixXcd(a.adjoint() * a) : Eigen::MatrixXcd(a * a.adjoint());
    gram = 0.5 * (gram + gram.adjoint());
    const Eigen::VectorXd ev = hermitian_eigenvalues(gram);
    s.values.resize(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) s.values[static_cast<std::size_t>(i)] = std::sqrt(std::max(ev(i), 0.0));
    return s;
}

SpectralData singular_values(const DenseOperator& a) {
    SpectralData s = singular_values(a.matrix);
    s.grid = a.grid;
    return s;
}

namespace {

SpectralData h_spectrum_from_gram_eigenvalues(const Eigen::VectorXd& ev, Eigen::Index total) {
    const Eigen::Index k = ev.size();
    if (k > total) throw InputError("Gram block larger than the grid");
    SpectralData s;
    s.kind = SpectralKind::singular;
    // rank G <= min(K, total - K); surplus eigenvalues of G*G are zeros and belong to the kernel
    const Eigen::Index surplus = std::max<Eigen::Index>(0, 2 * k - total);
    for (Eigen::Index i = surplus; i < k; ++i) s.values.push_back(std::sqrt(std::max(ev(i), 0.0)));
    s.kernel_dimension = total - 2 * static_cast<Eigen::Index>(s.values.size());
    return s;
}

} // namespace

SpectralData h_spectrum_from_gram(const Eigen::MatrixXcd& g_gram, Eigen::Index total) {
    return h_spectrum_from_gram_eigenvalues(hermitian_eigenvalues(g_gram), total);
}

SpectralData h_spectrum(const GramBlocks& blocks) {
    if (imaginary_fraction(blocks.t) <= kRealThreshold && imaginary_fraction(blocks.mm) <= kRealThreshold) {
        const Eigen::MatrixXd t = blocks.t.real();
        Eigen::MatrixXd gg = blocks.mm.real();
        gg.noalias() -= t.transpose() * t;
        const Eigen::MatrixXd sym = 0.5 * (gg + gg.transpose());
        return h_spectrum_from_gram_eigenvalues(hermitian_eigenvalues(sym), blocks.total);
    }
    return h_spectrum_from_gram(g_gram(blocks), blocks.total);
}

double trace_of_function(const SpectralData& s, const TestFunction& g) {
    if (g(0.0) != 0.0) throw InputError("trace_of_function needs g(0) = 0");
    double sum = 0.0;
    if (s.kind == SpectralKind::eigen) {
        for (double v : s.values) sum += g(v);
    } else {
        for (double v : s.values) sum += g(v) + g(-v);
    }
    return sum;
}

double schatten_norm(const Eigen::MatrixXcd& a, SchattenP p) {
    const SpectralData s = singular_values(a);
    switch (p) {
    case SchattenP::one: {
        double sum = 0.0;
        for (double v : s.values) sum += v;
        return sum;
    }
    case SchattenP::two: {
        double sum = 0.0;
        for (double v : s.values) sum += v * v;
        return std::sqrt(sum);
    }
    case SchattenP::infinity:
        return s.values.empty() ? 0.0 : *std::max_element(s.values.begin(), s.values.end());
    }
    return 0.0;
}

double schatten_norm(const DenseOperator& a, SchattenP p) { return schatten_norm(a.matrix, p); }

} // namespace hankel

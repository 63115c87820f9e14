#include "hankel/operators.hpp"

#include "hankel/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hankel {

namespace {

void check_symbol_support(const Grid& grid, const SeparableSymbol& a) {
    const double extent = a.x_extent();
    if (std::isfinite(extent)) check_padding(grid, extent);
    else if (!a.x_independent()) throw InputError("symbol x-support is not compact; cannot check the padding margin");
}

Eigen::VectorXcd spatial_values(const Grid& grid, const Factor& f) {
    Eigen::VectorXcd v(grid.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = f(grid.point(j));
    return v;
}

Eigen::MatrixXcd circulant(const Grid& grid, const Eigen::VectorXcd& column) {
    const Eigen::Index n = grid.size();
    Eigen::MatrixXcd c(n, n);
    for (Eigen::Index col = 0; col < n; ++col)
        for (Eigen::Index row = 0; row < n; ++row) c(row, col) = column(circulant_offset(grid, row, col));
    return c;
}

/// Frequency multiplier of an x-independent symbol: sum_i f_i phi_i(eta / alpha).
Eigen::VectorXcd x_free_multiplier(const Grid& grid, const SeparableSymbol& a) {
    Eigen::VectorXcd m = Eigen::VectorXcd::Zero(grid.size());
    for (const auto& term : a.terms()) m += term.x.constant_value() * frequency_values(grid, term.xi);
    return m;
}

} // namespace

IndexList lambda_indices(const Grid& grid, const Domain& lambda) {
    if (lambda.dimension() != grid.dimension) throw InputError("Lambda dimension does not match the grid");
    IndexList out;
    for (Eigen::Index j = 0; j < grid.size(); ++j)
        if (contains_point(lambda, grid.point(j))) out.push_back(j);
    return out;
}

IndexList complement_indices(const Grid& grid, const IndexList& inside) {
    IndexList out;
    out.reserve(grid.size() - inside.size());
    auto it = inside.begin();
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
        if (it != inside.end() && *it == j) ++it;
        else out.push_back(j);
    }
    return out;
}

Eigen::VectorXcd frequency_values(const Grid& grid, const Factor& phi) {
    if (phi.is_constant()) return Eigen::VectorXcd::Constant(grid.size(), phi.constant_value());
    Eigen::VectorXcd v(grid.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = phi(grid.frequency_point(k) / grid.alpha);
    return v;
}

Eigen::VectorXcd projection_multiplier(const Grid& grid, const Domain& omega) {
    if (omega.dimension() != grid.dimension) throw InputError("Omega dimension does not match the grid");
    check_nyquist(grid, omega.extent());
    Eigen::VectorXcd v(grid.size());
    for (Eigen::Index k = 0; k < v.size(); ++k)
        v(k) = contains_point(omega, grid.frequency_point(k) / grid.alpha) ? 1.0 : 0.0;
    return v;
}

DenseOperator build_projection(const Grid& grid, const Domain& omega) {
    DenseOperator op;
    op.kind = OperatorKind::projection;
    op.grid = grid;
    op.matrix = circulant(grid, circulant_column(grid, projection_multiplier(grid, omega)));
    return op;
}

DenseOperator build_multiplier(const Grid& grid, const Domain& lambda) {
    check_padding(grid, lambda.extent());
    DenseOperator op;
    op.kind = OperatorKind::multiplier;
    op.grid = grid;
    op.matrix = Eigen::MatrixXcd::Zero(grid.size(), grid.size());
    for (Eigen::Index j : lambda_indices(grid, lambda)) op.matrix(j, j) = 1.0;
    return op;
}

DenseOperator build_pdo(const Grid& grid, const SeparableSymbol& a, Side side) {
    check_symbol_support(grid, a);
    DenseOperator op;
    op.kind = OperatorKind::pdo;
    op.grid = grid;
    op.matrix = Eigen::MatrixXcd::Zero(grid.size(), grid.size());
    for (const auto& term : a.terms()) {
        Eigen::MatrixXcd c = circulant(grid, circulant_column(grid, frequency_values(grid, term.xi)));
        if (!term.x.is_constant()) {
            const Eigen::VectorXcd f = spatial_values(grid, term.x);
            if (side == Side::left) c = f.asDiagonal() * c;
            else c = c * f.asDiagonal();
        } else {
            c *= term.x.constant_value();
        }
        op.matrix += c;
    }
    return op;
}

OperatorApplier::OperatorApplier(const Grid& grid, const SeparableSymbol& a, const Domain& omega)
    : grid_(grid), fft_(grid), projection_(projection_multiplier(grid, omega)), scratch_(grid.size()),
      accumulator_(grid.size()) {
    check_symbol_support(grid, a);
    for (const auto& term : a.terms()) {
        Term t;
        t.x_constant = term.x.is_constant();
        t.x_values = t.x_constant ? Eigen::VectorXcd::Constant(1, term.x.constant_value()) : spatial_values(grid, term.x);
        t.xi_values = frequency_values(grid, term.xi);
        terms_.push_back(std::move(t));
    }
}

void OperatorApplier::apply_projection(Eigen::Ref<Eigen::VectorXcd> v) { fft_.apply_multiplier(projection_, v); }

void OperatorApplier::apply_symbol(Eigen::Ref<Eigen::VectorXcd> v) {
    // one forward transform shared by all terms
    fft_.forward(v);
    accumulator_.setZero();
    for (const auto& t : terms_) {
        scratch_ = v.cwiseProduct(t.xi_values);
        fft_.inverse(scratch_);
        if (t.x_constant) accumulator_ += t.x_values(0) * scratch_;
        else accumulator_ += t.x_values.cwiseProduct(scratch_);
    }
    v = accumulator_;
}

void OperatorApplier::apply_symbol_adjoint(Eigen::Ref<Eigen::VectorXcd> v) {
    // (f Op(phi))* = Op(conj phi) conj f
    accumulator_.setZero();
    for (const auto& t : terms_) {
        if (t.x_constant) scratch_ = std::conj(t.x_values(0)) * v;
        else scratch_ = t.x_values.conjugate().cwiseProduct(v);
        fft_.forward(scratch_);
        accumulator_ += t.xi_values.conjugate().cwiseProduct(scratch_);
    }
    fft_.inverse(accumulator_);
    v = accumulator_;
}

void OperatorApplier::apply_compressed(Eigen::Ref<Eigen::VectorXcd> v) {
    apply_projection(v);
    apply_symbol(v);
    apply_projection(v);
}

DenseOperator build_composite(const Grid& grid, const SeparableSymbol& a, const Domain& lambda,
                              const Domain& omega, CompositeKind kind, Layout layout) {
    check_padding(grid, lambda.extent());
    const IndexList inside = lambda_indices(grid, lambda);
    const IndexList outside = complement_indices(grid, inside);
    const Eigen::Index n = grid.size();

    OperatorApplier applier(grid, a, omega);
    Eigen::MatrixXcd columns(n, static_cast<Eigen::Index>(inside.size()));
    Eigen::VectorXcd v(n);
    for (std::size_t c = 0; c < inside.size(); ++c) {
        v.setZero();
        v(inside[c]) = 1.0;
        applier.apply_compressed(v);
        columns.col(static_cast<Eigen::Index>(c)) = v;
    }

    DenseOperator op;
    op.grid = grid;
    op.kind = kind == CompositeKind::t ? OperatorKind::t : kind == CompositeKind::g ? OperatorKind::g : OperatorKind::h;
    const IndexList& rows = kind == CompositeKind::t ? inside : outside;

    if (layout == Layout::block && kind != CompositeKind::h) {
        op.matrix.resize(static_cast<Eigen::Index>(rows.size()), columns.cols());
        for (std::size_t r = 0; r < rows.size(); ++r) op.matrix.row(static_cast<Eigen::Index>(r)) = columns.row(rows[r]);
        op.row_index = rows;
        op.col_index = inside;
        return op;
    }

    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t c = 0; c < inside.size(); ++c)
        for (Eigen::Index r : rows) g(r, inside[c]) = columns(r, static_cast<Eigen::Index>(c));
    if (kind == CompositeKind::h) g += g.adjoint().eval();
    op.matrix = std::move(g);
    return op;
}

GramBlocks gram_blocks(const Grid& grid, const SeparableSymbol& a, const Domain& lambda, const Domain& omega) {
    check_padding(grid, lambda.extent());
    GramBlocks out;
    out.lambda = lambda_indices(grid, lambda);
    out.total = grid.size();
    const auto k = static_cast<Eigen::Index>(out.lambda.size());
    out.t.resize(k, k);
    out.mm.resize(k, k);

    if (a.x_independent()) {
        // P Op(a) P is the circulant of m = chi_Omega a; M* M on Lambda is the circulant of |m|^2
        const Eigen::VectorXcd m = projection_multiplier(grid, omega).cwiseProduct(x_free_multiplier(grid, a));
        const Eigen::VectorXcd c = circulant_column(grid, m);
        const Eigen::VectorXcd c2 = circulant_column(grid, m.cwiseAbs2().cast<Complex>());
        for (Eigen::Index j = 0; j < k; ++j)
            for (Eigen::Index i = 0; i < k; ++i) {
                const Eigen::Index off = circulant_offset(grid, out.lambda[i], out.lambda[j]);
                out.t(i, j) = c(off);
                out.mm(i, j) = c2(off);
            }
        return out;
    }

    OperatorApplier applier(grid, a, omega);
    Eigen::VectorXcd v(grid.size());
    for (Eigen::Index j = 0; j < k; ++j) {
        v.setZero();
        v(out.lambda[j]) = 1.0;
        applier.apply_compressed(v);
        for (Eigen::Index i = 0; i < k; ++i) out.t(i, j) = v(out.lambda[i]);
        // M* = chi P Op(a)* P, and v is already in the range of P
        applier.apply_symbol_adjoint(v);
        applier.apply_projection(v);
        for (Eigen::Index i = 0; i < k; ++i) out.mm(i, j) = v(out.lambda[i]);
    }
    return out;
}

Eigen::MatrixXcd g_gram(const GramBlocks& blocks) {
    Eigen::MatrixXcd gg = blocks.mm;
    gg.noalias() -= blocks.t.adjoint() * blocks.t;
    return 0.5 * (gg + gg.adjoint());
}

double g_frobenius_squared(const Grid& grid, const SeparableSymbol& a, const Domain& lambda, const Domain& omega) {
    check_padding(grid, lambda.extent());
    const IndexList inside = lambda_indices(grid, lambda);
    std::vector<char> in_lambda(static_cast<std::size_t>(grid.size()), 0);
    for (Eigen::Index j : inside) in_lambda[static_cast<std::size_t>(j)] = 1;

    double total = 0.0;
    if (a.x_independent()) {
        const Eigen::VectorXcd m = projection_multiplier(grid, omega).cwiseProduct(x_free_multiplier(grid, a));
        const Eigen::VectorXcd c = circulant_column(grid, m);
        const double column_norm = c.squaredNorm();
        for (Eigen::Index j : inside) {
            double in_sum = 0.0;
            for (Eigen::Index i : inside) in_sum += std::norm(c(circulant_offset(grid, i, j)));
            total += column_norm - in_sum;
        }
        return total;
    }
    OperatorApplier applier(grid, a, omega);
    Eigen::VectorXcd v(grid.size());
    for (Eigen::Index j : inside) {
        v.setZero();
        v(j) = 1.0;
        applier.apply_compressed(v);
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (!in_lambda[static_cast<std::size_t>(i)]) total += std::norm(v(i));
    }
    return total;
}

Eigen::MatrixXcd pdo_block(const Grid& grid, const SeparableSymbol& b, const IndexList& lambda) {
    check_symbol_support(grid, b);
    const auto k = static_cast<Eigen::Index>(lambda.size());
    Eigen::MatrixXcd out(k, k);
    if (b.x_independent()) {
        const Eigen::VectorXcd c = circulant_column(grid, x_free_multiplier(grid, b));
        for (Eigen::Index j = 0; j < k; ++j)
            for (Eigen::Index i = 0; i < k; ++i) out(i, j) = c(circulant_offset(grid, lambda[i], lambda[j]));
        return out;
    }
    GridFFT fft(grid);
    Eigen::VectorXcd v(grid.size()), acc(grid.size());
    std::vector<Eigen::VectorXcd> xi_values, x_values;
    for (const auto& term : b.terms()) {
        xi_values.push_back(frequency_values(grid, term.xi));
        x_values.push_back(spatial_values(grid, term.x));
    }
    for (Eigen::Index j = 0; j < k; ++j) {
        acc.setZero();
        for (std::size_t t = 0; t < xi_values.size(); ++t) {
            v.setZero();
            v(lambda[j]) = 1.0;
            fft.apply_multiplier(xi_values[t], v);
            acc += x_values[t].cwiseProduct(v);
        }
        for (Eigen::Index i = 0; i < k; ++i) out(i, j) = acc(lambda[i]);
    }
    return out;
}

double imaginary_fraction(const Eigen::MatrixXcd& m) {
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return m.imag().cwiseAbs().maxCoeff() / scale;
}

} // namespace hankel

#include "hankel/fourier.hpp"

#include "hankel/errors.hpp"

namespace hankel {

GridFFT::GridFFT(const Grid& grid) : dimension_(grid.dimension), n_(grid.n), in_(grid.n), out_(grid.n) {
    // unscaled inverse; the 1/N^d factor is applied once per transform below
    fft_.SetFlag(Eigen::FFT<double>::Unscaled);
}

void GridFFT::transform(Eigen::Ref<Eigen::VectorXcd> v, bool inverse) {
    const Eigen::Index total = dimension_ == 1 ? n_ : Eigen::Index(n_) * n_;
    if (v.size() != total) throw InputError("FFT input length does not match the grid");
    auto line = [&](Eigen::Index start, Eigen::Index stride) {
        for (int i = 0; i < n_; ++i) in_[i] = v(start + i * stride);
        if (inverse) fft_.inv(out_.data(), in_.data(), n_);
        else fft_.fwd(out_.data(), in_.data(), n_);
        for (int i = 0; i < n_; ++i) v(start + i * stride) = out_[i];
    };
    if (dimension_ == 1) {
        line(0, 1);
    } else {
        for (int row = 0; row < n_; ++row) line(Eigen::Index(row) * n_, 1);
        for (int col = 0; col < n_; ++col) line(col, n_);
    }
    if (inverse) v /= static_cast<double>(total);
}

void GridFFT::forward(Eigen::Ref<Eigen::VectorXcd> v) { transform(v, false); }

void GridFFT::inverse(Eigen::Ref<Eigen::VectorXcd> v) { transform(v, true); }

void GridFFT::apply_multiplier(const Eigen::VectorXcd& multiplier, Eigen::Ref<Eigen::VectorXcd> v) {
    forward(v);
    v.array() *= multiplier.array();
    inverse(v);
}

Eigen::VectorXcd circulant_column(const Grid& grid, const Eigen::VectorXcd& multiplier) {
    GridFFT fft(grid);
    Eigen::VectorXcd c = multiplier;
    fft.inverse(c);
    return c;
}

} // namespace hankel

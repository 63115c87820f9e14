#pragma once

#include "hankel/geometry.hpp"

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace hankel {

using Complex = std::complex<double>;

/// One factor f(x) or phi(xi) of a separable symbol.
class Factor {
public:
    /// f == value everywhere.
    static Factor constant(Complex value);
    /// height * exp(1 - 1/(1 - |p - center|^2 / radius^2)) inside the ball, zero outside.
    /// C-infinity with compact support; equals `height` at the center.
    static Factor bump(Point center, double radius, double height = 1.0);
    /// Caller-supplied smooth factor. `extent` bounds the sup-norm support about the origin
    /// (infinity when not compactly supported).
    static Factor custom(std::function<Complex(const Point&)> f,
                         double extent = std::numeric_limits<double>::infinity(),
                         std::string label = "custom");

    Complex operator()(const Point& p) const { return f_(p); }
    bool is_constant() const { return constant_; }
    Complex constant_value() const { return value_; }
    /// Sup-norm support extent; zero for constants (they do not localise anything).
    double extent() const { return extent_; }
    const std::string& label() const { return label_; }

    static Factor product(const Factor& a, const Factor& b);
    Factor conjugate() const;

private:
    Factor() = default;
    std::function<Complex(const Point&)> f_;
    bool constant_ = false;
    Complex value_{0.0, 0.0};
    double extent_ = 0.0;
    std::string label_;
};

struct SymbolTerm {
    Factor x;
    Factor xi;
};

/// a(x, xi) = sum_i f_i(x) phi_i(xi). Smoothness (bounded derivatives up to order d + 2) is
/// declared by the caller, not checked.
class SeparableSymbol {
public:
    SeparableSymbol() = default;
    explicit SeparableSymbol(std::vector<SymbolTerm> terms) : terms_(std::move(terms)) {}

    static SeparableSymbol one() { return SeparableSymbol({{Factor::constant(1.0), Factor::constant(1.0)}}); }
    static SeparableSymbol zero() { return SeparableSymbol(); }
    static SeparableSymbol constant(Complex c) { return SeparableSymbol({{Factor::constant(c), Factor::constant(1.0)}}); }

    const std::vector<SymbolTerm>& terms() const { return terms_; }

    Complex operator()(const Point& x, const Point& xi) const;

    bool is_zero() const;
    /// Every term has a constant x-factor, so the quantisation is a Fourier multiplier.
    bool x_independent() const;
    /// Every term has a constant xi-factor, so the quantisation is a multiplication operator.
    bool xi_independent() const;
    /// True when every factor is constant; the value is stored through `value` if given.
    bool is_constant(Complex* value = nullptr) const;

    /// Sup-norm extents of the x- and xi-supports (zero when unconstrained by constants).
    double x_extent() const;
    double xi_extent() const;

    SeparableSymbol conjugate() const;
    friend SeparableSymbol operator*(const SeparableSymbol& a, const SeparableSymbol& b);

private:
    std::vector<SymbolTerm> terms_;
};

} // namespace hankel

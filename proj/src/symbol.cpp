#include "hankel/symbol.hpp"

#include "hankel/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hankel {

Factor Factor::constant(Complex value) {
    Factor f;
    f.f_ = [value](const Point&) { return value; };
    f.constant_ = true;
    f.value_ = value;
    f.extent_ = 0.0;
    f.label_ = "const";
    return f;
}

Factor Factor::bump(Point center, double radius, double height) {
    if (!(radius > 0.0)) throw InputError("bump radius must be positive");
    Factor f;
    f.f_ = [center, radius, height](const Point& p) -> Complex {
        const double s = (p - center).squaredNorm() / (radius * radius);
        if (s >= 1.0) return 0.0;
        return height * std::exp(1.0 - 1.0 / (1.0 - s));
    };
    f.extent_ = center.cwiseAbs().maxCoeff() + radius;
    f.label_ = "bump";
    return f;
}

Factor Factor::custom(std::function<Complex(const Point&)> fn, double extent, std::string label) {
    if (!fn) throw InputError("custom factor is empty");
    Factor f;
    f.f_ = std::move(fn);
    f.extent_ = extent;
    f.label_ = std::move(label);
    return f;
}

Factor Factor::product(const Factor& a, const Factor& b) {
    if (a.constant_ && b.constant_) return constant(a.value_ * b.value_);
    Factor f;
    f.f_ = [fa = a.f_, fb = b.f_](const Point& p) { return fa(p) * fb(p); };
    // support of a product is the intersection; the smaller finite extent bounds it
    const double ea = a.constant_ ? std::numeric_limits<double>::infinity() : a.extent_;
    const double eb = b.constant_ ? std::numeric_limits<double>::infinity() : b.extent_;
    f.extent_ = std::min(ea, eb);
    f.label_ = a.label_ + "*" + b.label_;
    return f;
}

Factor Factor::conjugate() const {
    if (constant_) return constant(std::conj(value_));
    Factor f = *this;
    f.f_ = [g = f_](const Point& p) { return std::conj(g(p)); };
    return f;
}

Complex SeparableSymbol::operator()(const Point& x, const Point& xi) const {
    Complex sum = 0.0;
    for (const auto& t : terms_) sum += t.x(x) * t.xi(xi);
    return sum;
}

bool SeparableSymbol::is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const SymbolTerm& t) {
        return (t.x.is_constant() && t.x.constant_value() == 0.0) ||
               (t.xi.is_constant() && t.xi.constant_value() == 0.0);
    });
}

bool SeparableSymbol::x_independent() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const SymbolTerm& t) { return t.x.is_constant(); });
}

bool SeparableSymbol::xi_independent() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const SymbolTerm& t) { return t.xi.is_constant(); });
}

bool SeparableSymbol::is_constant(Complex* value) const {
    if (!x_independent() || !xi_independent()) return false;
    Complex sum = 0.0;
    for (const auto& t : terms_) sum += t.x.constant_value() * t.xi.constant_value();
    if (value) *value = sum;
    return true;
}

double SeparableSymbol::x_extent() const {
    double e = 0.0;
    for (const auto& t : terms_) e = std::max(e, t.x.extent());
    return e;
}

double SeparableSymbol::xi_extent() const {
    double e = 0.0;
    for (const auto& t : terms_) e = std::max(e, t.xi.extent());
    return e;
}

SeparableSymbol SeparableSymbol::conjugate() const {
    std::vector<SymbolTerm> terms;
    for (const auto& t : terms_) terms.push_back({t.x.conjugate(), t.xi.conjugate()});
    return SeparableSymbol(std::move(terms));
}

SeparableSymbol operator*(const SeparableSymbol& a, const SeparableSymbol& b) {
    std::vector<SymbolTerm> terms;
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) terms.push_back({Factor::product(s.x, t.x), Factor::product(s.xi, t.xi)});
    return SeparableSymbol(std::move(terms));
}

} // namespace hankel

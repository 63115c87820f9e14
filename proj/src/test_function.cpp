#include "hankel/test_function.hpp"

#include "hankel/errors.hpp"

#include <cmath>
#include <sstream>

namespace hankel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double horner(const std::vector<double>& c, double t) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
}

} // namespace

TestFunction TestFunction::monomial(int p) {
    if (p < 1) throw InputError("monomial degree must be positive");
    return TestFunction(Monomial{p});
}

TestFunction TestFunction::polynomial(std::vector<double> coefficients) {
    if (coefficients.empty()) coefficients.push_back(0.0);
    if (coefficients.front() != 0.0) throw InputError("test function polynomial must vanish at 0");
    return TestFunction(Polynomial{std::move(coefficients)});
}

TestFunction TestFunction::indicator_above(double lambda) {
    if (!(lambda > 0.0)) throw InputError("indicator threshold lambda must be positive");
    return TestFunction(IndicatorAbove{lambda, false});
}

TestFunction TestFunction::symmetric_indicator(double lambda) {
    if (!(lambda > 0.0)) throw InputError("indicator threshold lambda must be positive");
    return TestFunction(IndicatorAbove{lambda, true});
}

TestFunction TestFunction::generic(std::function<double(double)> g, bool even_quotient_continuous,
                                   std::string label) {
    if (!g) throw InputError("generic test function is empty");
    if (g(0.0) != 0.0) throw InputError("generic test function must satisfy g(0) = 0");
    return TestFunction(Generic{std::move(g), even_quotient_continuous, std::move(label)});
}

double TestFunction::operator()(double t) const {
    return std::visit(overloaded{[t](const Monomial& m) { return std::pow(t, m.p); },
                                 [t](const Polynomial& p) { return horner(p.coefficients, t); },
                                 [t](const IndicatorAbove& ind) {
                                     if (ind.symmetric) return std::abs(t) > ind.lambda ? 0.5 : 0.0;
                                     return t > ind.lambda ? 1.0 : 0.0;
                                 },
                                 [t](const Generic& g) { return g.g(t); }},
                      v_);
}

bool TestFunction::is_polynomial() const {
    return std::holds_alternative<Monomial>(v_) || std::holds_alternative<Polynomial>(v_);
}

std::vector<double> TestFunction::coefficients() const {
    if (const auto* m = std::get_if<Monomial>(&v_)) {
        std::vector<double> c(m->p + 1, 0.0);
        c.back() = 1.0;
        return c;
    }
    if (const auto* p = std::get_if<Polynomial>(&v_)) return p->coefficients;
    throw InputError("test function " + describe() + " is not a polynomial");
}

bool TestFunction::is_zero() const {
    if (!is_polynomial()) return false;
    for (double c : coefficients())
        if (c != 0.0) return false;
    return true;
}

std::string TestFunction::describe() const {
    std::ostringstream os;
    std::visit(overloaded{[&](const Monomial& m) { os << "t^" << m.p; },
                          [&](const Polynomial& p) {
                              bool first = true;
                              for (std::size_t k = 1; k < p.coefficients.size(); ++k) {
                                  if (p.coefficients[k] == 0.0) continue;
                                  if (!first) os << " + ";
                                  os << p.coefficients[k] << "*t^" << k;
                                  first = false;
                              }
                              if (first) os << "0";
                          },
                          [&](const IndicatorAbove& ind) {
                              os << (ind.symmetric ? "chi(|t|>" : "chi(t>") << ind.lambda << ")";
                          },
                          [&](const Generic& g) { os << g.label; }},
               v_);
    return os.str();
}

TestFunction even_part(const TestFunction& g) {
    return std::visit(overloaded{[&](const Monomial& m) {
                                     return m.p % 2 == 0 ? g : TestFunction::zero();
                                 },
                                 [&](const Polynomial& p) {
                                     std::vector<double> c = p.coefficients;
                                     for (std::size_t k = 1; k < c.size(); k += 2) c[k] = 0.0;
                                     return TestFunction::polynomial(std::move(c));
                                 },
                                 [&](const IndicatorAbove& ind) {
                                     return TestFunction::symmetric_indicator(ind.lambda);
                                 },
                                 [&](const Generic& gen) {
                                     auto f = gen.g;
                                     return TestFunction::generic([f](double t) { return 0.5 * (f(t) + f(-t)); },
                                                                  gen.even_quotient_continuous, gen.label + "_ev");
                                 }},
                      g.variant());
}

} // namespace hankel

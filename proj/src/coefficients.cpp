#include "hankel/coefficients.hpp"

#include "hankel/errors.hpp"
#include "hankel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hankel {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimensions(const Domain& lambda, const Domain& omega) {
    if (lambda.dimension() != omega.dimension())
        throw InputError("Lambda and Omega have different dimensions");
}

/// int_D f over one domain, refining the cubature level until two levels agree.
std::pair<Complex, double> integrate_factor(const Factor& f, const Domain& domain) {
    if (f.is_constant()) return {f.constant_value() * volume(domain), 0.0};
    Complex previous = 0.0;
    double error = 0.0;
    for (int level = 1; level <= 8; ++level) {
        const auto c = domain_cubature(domain, level);
        Complex sum = 0.0;
        for (std::size_t i = 0; i < c.nodes.size(); ++i) sum += c.weights[i] * f(c.nodes[i]);
        if (level > 1) {
            error = std::abs(sum - previous);
            if (error <= 1e-12 * std::max(1.0, std::abs(sum))) return {sum, error};
        }
        previous = sum;
    }
    return {previous, error};
}

double prefactor(int d, int power_shift) { return std::pow(2.0 * kPi, -(d - power_shift)); }

/// Inner boundary integral over dOmega of b(x, xi) |n_x . n(xi)| dS, split at the sign changes
/// of n_x . n(xi).
double inner_boundary_integral(const PairFunction& b, const Point& x, const Point& n_x,
                               const std::vector<BoundaryArc>& arcs, int m) {
    static const auto gl = gauss_legendre(16);
    const auto& [gx, gw] = gl;
    double total = 0.0;
    for (const auto& arc : arcs) {
        const double span = arc.t1 - arc.t0;
        auto s = [&](double t) { return n_x.dot(arc.normal(t)); };
        auto integrand = [&](double t) { return b(x, arc.point(t)) * std::abs(s(t)) * arc.speed(t); };

        const int samples = std::max(16, arc.periodic ? m : m / 4);
        std::vector<double> breaks;
        double t_prev = arc.t0;
        double s_prev = s(t_prev);
        for (int k = 1; k <= samples; ++k) {
            const double t = arc.t0 + span * k / samples;
            const double s_t = s(t);
            if (s_prev == 0.0) {
                breaks.push_back(t_prev);
            } else if (s_prev * s_t < 0.0) {
                double lo = t_prev, hi = t;
                for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if ((s(mid) < 0.0) == (s_prev < 0.0)) lo = mid;
                    else hi = mid;
                }
                breaks.push_back(0.5 * (lo + hi));
            }
            t_prev = t;
            s_prev = s_t;
        }

        if (arc.periodic && breaks.empty()) {
            // smooth periodic integrand: trapezoid is spectrally accurate
            double sum = 0.0;
            for (int k = 0; k < m; ++k) sum += integrand(arc.t0 + span * k / m);
            total += sum * span / m;
            continue;
        }

        std::vector<std::pair<double, double>> pieces;
        if (arc.periodic) {
            std::sort(breaks.begin(), breaks.end());
            for (std::size_t k = 0; k + 1 < breaks.size(); ++k) pieces.emplace_back(breaks[k], breaks[k + 1]);
            pieces.emplace_back(breaks.back(), breaks.front() + span);
        } else {
            breaks.insert(breaks.begin(), arc.t0);
            breaks.push_back(arc.t1);
            std::sort(breaks.begin(), breaks.end());
            for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
                if (breaks[k + 1] > breaks[k]) pieces.emplace_back(breaks[k], breaks[k + 1]);
        }
        for (const auto& [lo, hi] : pieces) {
            const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / span * m / 16.0)));
            for (int p = 0; p < panels; ++p) {
                const double a = lo + (hi - lo) * p / panels;
                const double c = lo + (hi - lo) * (p + 1) / panels;
                for (int k = 0; k < gx.size(); ++k) {
                    double t = 0.5 * (a + c) + 0.5 * (c - a) * gx(k);
                    if (arc.periodic && t >= arc.t1) t -= span;
                    total += 0.5 * (c - a) * gw(k) * integrand(t);
                }
            }
        }
    }
    return total;
}

double w1_value(const PairFunction& b, const Domain& lambda, const Domain& omega, int m) {
    if (lambda.dimension() == 1) {
        const auto qs = boundary_quadrature(lambda, 0);
        const auto qp = boundary_quadrature(omega, 0);
        double sum = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                sum += b(qs.nodes[i], qp.nodes[j]) * std::abs(qs.normals[i].x() * qp.normals[j].x());
        return sum;
    }
    const auto qs = boundary_quadrature(lambda, m);
    const auto arcs = boundary_arcs(omega);
    double sum = 0.0;
    for (std::size_t i = 0; i < qs.nodes.size(); ++i)
        sum += qs.weights[i] * inner_boundary_integral(b, qs.nodes[i], qs.normals[i], arcs, m);
    return sum / (2.0 * kPi);
}

bool domains_ok(const Domain& lambda, const Domain& omega) { return lambda.smooth() && omega.smooth(); }

} // namespace

CoefficientReport w0(const SeparableSymbol& b, const Domain& lambda, const Domain& omega) {
    check_dimensions(lambda, omega);
    Complex total = 0.0;
    double error = 0.0;
    for (const auto& term : b.terms()) {
        const auto [fx, ex] = integrate_factor(term.x, lambda);
        const auto [fxi, exi] = integrate_factor(term.xi, omega);
        total += fx * fxi;
        error += ex * std::abs(fxi) + exi * std::abs(fx);
    }
    const double scale = prefactor(lambda.dimension(), 0);
    return {total.real() * scale, error * scale, domains_ok(lambda, omega)};
}

CoefficientReport w0(const PairFunction& b, const Domain& lambda, const Domain& omega) {
    check_dimensions(lambda, omega);
    const double scale = prefactor(lambda.dimension(), 0);
    double previous = 0.0;
    double error = 0.0;
    const int max_level = lambda.dimension() == 1 ? 8 : 3;
    for (int level = 1; level <= max_level; ++level) {
        const auto cx = domain_cubature(lambda, level);
        const auto cxi = domain_cubature(omega, level);
        double sum = 0.0;
        for (std::size_t i = 0; i < cx.nodes.size(); ++i) {
            double inner = 0.0;
            for (std::size_t j = 0; j < cxi.nodes.size(); ++j) inner += cxi.weights[j] * b(cx.nodes[i], cxi.nodes[j]);
            sum += cx.weights[i] * inner;
        }
        sum *= scale;
        if (level > 1) {
            error = std::abs(sum - previous);
            if (error <= 1e-10 * std::max(1.0, std::abs(sum))) return {sum, error, domains_ok(lambda, omega)};
        }
        previous = sum;
    }
    return {previous, error, domains_ok(lambda, omega)};
}

CoefficientReport w1(const PairFunction& b, const Domain& lambda, const Domain& omega, int m) {
    check_dimensions(lambda, omega);
    if (lambda.dimension() == 2 && m < 8) throw InputError("w1 needs m >= 8 boundary nodes");
    const double value = w1_value(b, lambda, omega, m);
    double error = 0.0;
    if (lambda.dimension() == 2) error = std::abs(value - w1_value(b, lambda, omega, std::max(8, m / 2)));
    return {value, error, domains_ok(lambda, omega)};
}

CoefficientReport w1(double b, const Domain& lambda, const Domain& omega, int m) {
    return w1([b](const Point&, const Point&) { return b; }, lambda, omega, m);
}

double a_widom(const TestFunction& g, double b) {
    if (std::holds_alternative<IndicatorAbove>(g.variant()))
        throw InputError("a_widom does not support indicator test functions; use u_frak or u_indicator");
    const double scale = 1.0 / (4.0 * kPi * kPi);
    if (g.is_polynomial()) {
        const std::vector<double> c = g.coefficients();
        std::vector<double> cb(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) cb[k] = c[k] * std::pow(b, static_cast<double>(k));
        const double gb = g(b);
        // t in (0, 1/2]: (g(bt)/t - g(b)) / (1 - t), with g(bt)/t expanded exactly
        auto left = [&](double t) {
            double q = 0.0;
            for (std::size_t k = cb.size(); k-- > 1;) q = q * t + cb[k];
            return (q - gb) / (1.0 - t);
        };
        // s = 1 - t in (0, 1/2): ((g(b(1-s)) - g(b))/s + g(b)) / (1 - s)
        auto right = [&](double s) {
            double dq = 0.0;
            for (std::size_t k = 1; k < cb.size(); ++k) {
                double geometric = 0.0, power = 1.0;
                for (std::size_t j = 0; j < k; ++j) {
                    geometric += power;
                    power *= 1.0 - s;
                }
                dq -= cb[k] * geometric;
            }
            return (dq + gb) / (1.0 - s);
        };
        return scale * (integrate(left, 0.0, 0.5, 1e-13, 1e-14).value + integrate(right, 0.0, 0.5, 1e-13, 1e-14).value);
    }
    const double gb = g(b);
    auto f = [&](double t) { return (g(b * t) - t * gb) / (t * (1.0 - t)); };
    return scale * (integrate(f, 0.0, 0.5, 1e-13, 1e-13).value + integrate(f, 0.5, 1.0, 1e-13, 1e-13).value);
}

double u_indicator(double lambda, double b) {
    if (!(lambda > 0.0)) throw InputError("u_indicator needs lambda > 0");
    if (b <= 2.0 * lambda) return 0.0;
    return 2.0 / (kPi * kPi) * std::acosh(b / (2.0 * lambda));
}

double u_frak(const TestFunction& g, double b) {
    if (b < 0.0) throw InputError("u_frak needs b >= 0 (pass |a|)");
    if (const auto* ind = std::get_if<IndicatorAbove>(&g.variant()))
        return (ind->symmetric ? 0.5 : 1.0) * u_indicator(ind->lambda, b);
    if (b == 0.0 || g.is_zero()) return 0.0;
    // t = sin(theta) removes the 1/sqrt(1 - t^2) endpoint singularity
    auto f = [&](double theta) {
        const double s = std::sin(theta);
        return g(0.5 * b * s) / s;
    };
    return 2.0 / (kPi * kPi) * integrate(f, 0.0, 0.5 * kPi, 1e-13, 1e-14).value;
}

namespace {

/// g(t) = sum c_k t^k is homogeneous term by term, so U(g; b) = sum c_k b^k U(t^k; 1) and the
/// same for A. Caches the unit integrals for repeated pointwise evaluation.
struct HomogeneousExpansion {
    std::vector<double> unit;

    template <typename Integral>
    HomogeneousExpansion(const TestFunction& g, Integral integral) {
        const auto c = g.coefficients();
        unit.assign(c.size(), 0.0);
        for (std::size_t k = 1; k < c.size(); ++k)
            if (c[k] != 0.0) unit[k] = c[k] * integral(TestFunction::monomial(static_cast<int>(k)));
    }

    double operator()(double b) const {
        double acc = 0.0;
        for (std::size_t k = unit.size(); k-- > 1;) acc = acc * b + unit[k];
        return acc * b;
    }
};

double real_value(Complex z, const char* what) {
    if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z.real())))
        throw InputError(std::string(what) + " must be real-valued on the boundary for this predictor");
    return z.real();
}

} // namespace

Prediction predict(const PredictionRequest& request, const Domain& lambda, const Domain& omega, double alpha) {
    check_dimensions(lambda, omega);
    if (!(alpha >= 1.0)) throw InputError("alpha must be >= 1");
    const int d = lambda.dimension();
    const double log_scale = std::pow(alpha, d - 1) * std::log(alpha);
    const SeparableSymbol& a = request.a;

    Prediction out;
    out.hypotheses_ok = domains_ok(lambda, omega);
    if (!out.hypotheses_ok) out.warnings.push_back("hypotheses violated: a boundary is not C^3 (box corners)");

    switch (request.kind) {
    case PredictionKind::trace_h: {
        const TestFunction g_ev = even_part(request.g);
        if (const auto* gen = std::get_if<Generic>(&request.g.variant()); gen && !gen->even_quotient_continuous) {
            out.hypotheses_ok = false;
            out.warnings.push_back("hypotheses violated: g_ev(t)/t^2 declared discontinuous");
        }
        PairFunction density;
        if (g_ev.is_polynomial()) {
            HomogeneousExpansion u(g_ev, [](const TestFunction& m) { return u_frak(m, 1.0); });
            density = [u, &a](const Point& x, const Point& xi) { return u(std::abs(a(x, xi))); };
        } else {
            density = [&g_ev, &a](const Point& x, const Point& xi) { return u_frak(g_ev, std::abs(a(x, xi))); };
        }
        out.log_coefficient = w1(density, lambda, omega, request.boundary_nodes).value;
        break;
    }
    case PredictionKind::trace_t: {
        if (!request.g.is_polynomial()) throw InputError("trace_T prediction needs a polynomial test function");
        const auto c = request.g.coefficients();
        std::vector<SymbolTerm> terms;
        SeparableSymbol power = SeparableSymbol::one();
        for (std::size_t k = 1; k < c.size(); ++k) {
            power = power * a;
            if (c[k] == 0.0) continue;
            const SeparableSymbol weighted = request.weight * power;
            for (const auto& t : weighted.terms())
                terms.push_back({Factor::product(Factor::constant(c[k]), t.x), t.xi});
        }
        out.volume_coefficient = w0(SeparableSymbol(std::move(terms)), lambda, omega).value;
        HomogeneousExpansion aw(request.g, [](const TestFunction& m) { return a_widom(m, 1.0); });
        const SeparableSymbol& weight = request.weight;
        auto density = [aw, &a, &weight](const Point& x, const Point& xi) {
            return real_value(weight(x, xi), "weight b") * aw(real_value(a(x, xi), "symbol a"));
        };
        out.log_coefficient = w1(density, lambda, omega, request.boundary_nodes).value;
        break;
    }
    case PredictionKind::count: {
        const double lam = request.lambda;
        auto density = [lam, &a](const Point& x, const Point& xi) { return u_indicator(lam, std::abs(a(x, xi))); };
        out.log_coefficient = 0.5 * w1(density, lambda, omega, request.boundary_nodes).value;
        break;
    }
    }
    out.value = std::pow(alpha, d) * out.volume_coefficient + log_scale * out.log_coefficient;
    return out;
}

} // namespace hankel

#pragma once

#include "hankel/geometry.hpp"
#include "hankel/symbol.hpp"
#include "hankel/test_function.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hankel {

struct CoefficientReport {
    double value = 0.0;
    double quadrature_error_estimate = 0.0;
    /// Both domains satisfy the smoothness hypotheses (and any generic g is declared admissible).
    bool hypotheses_ok = true;
};

/// Real-valued density b(x, xi) on Lambda x Omega or on the boundary pair.
using PairFunction = std::function<double(const Point& x, const Point& xi)>;

/// (2 pi)^-d int_Lambda int_Omega b. Separable symbols factor into one-domain integrals; the
/// real part is returned.
CoefficientReport w0(const SeparableSymbol& b, const Domain& lambda, const Domain& omega);
CoefficientReport w0(const PairFunction& b, const Domain& lambda, const Domain& omega);

/// (2 pi)^-(d-1) int_{dLambda} int_{dOmega} b |n_S . n_P|. For d = 1 the four endpoint pairs
/// are summed with unit weights. In d = 2 the outer integral uses `boundary_quadrature(lambda, m)`;
/// the inner one is split at the zeros of n_S . n_P so the kinks of |n_S . n_P| are resolved.
CoefficientReport w1(const PairFunction& b, const Domain& lambda, const Domain& omega, int m);
CoefficientReport w1(double b, const Domain& lambda, const Domain& omega, int m);

/// (2 pi)^-2 int_0^1 (g(b t) - t g(b)) / (t (1 - t)) dt. Indicator test functions are rejected.
double a_widom(const TestFunction& g, double b);

/// (2 / pi^2) int_0^1 g(b t / 2) / (t sqrt(1 - t^2)) dt, for b >= 0.
double u_frak(const TestFunction& g, double b);

/// Closed form of u_frak for g = chi_(lambda, inf): (2/pi^2) arccosh(b / (2 lambda)) when b > 2 lambda.
double u_indicator(double lambda, double b);

enum class PredictionKind { trace_h, trace_t, count };

struct Prediction {
    double value = 0.0;
    /// Coefficient of alpha^(d-1) log alpha.
    double log_coefficient = 0.0;
    /// Coefficient of alpha^d (trace_t only).
    double volume_coefficient = 0.0;
    bool hypotheses_ok = true;
    std::vector<std::string> warnings;
};

struct PredictionRequest {
    PredictionKind kind = PredictionKind::trace_h;
    TestFunction g = TestFunction::monomial(2); ///< ignored for count
    double lambda = 0.25;                      ///< count threshold
    SeparableSymbol a = SeparableSymbol::one();
    SeparableSymbol weight = SeparableSymbol::one(); ///< b in tr(Op(b) g(T)), trace_t only
    int boundary_nodes = 256;
};

/// Right-hand side of the trace/counting asymptotics at a given alpha:
///   trace_h: alpha^(d-1) log alpha W1(U(g_ev; |a|))
///   trace_t: alpha^d W0(b g(a)) + alpha^(d-1) log alpha W1(b A(g; a))
///   count:   1/2 alpha^(d-1) log alpha W1(U(chi; |a|))
Prediction predict(const PredictionRequest& request, const Domain& lambda, const Domain& omega, double alpha);

} // namespace hankel

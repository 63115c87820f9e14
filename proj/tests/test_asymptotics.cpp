#include "hankel/errors.hpp"
#include "hankel/fit.hpp"
#include "hankel/suites.hpp"
#include "hankel/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hankel;
using std::numbers::pi;

namespace {

SweepConfig interval_config(Experiment e, std::vector<double> alphas) {
    SweepConfig c;
    c.experiment = e;
    c.alphas = std::move(alphas);
    return c;
}

const SuiteCheck& find(const SuiteReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    throw std::runtime_error("no check " + name);
}

const Check& find(const SweepResult& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    throw std::runtime_error("no check " + name);
}

SeparableSymbol bump_pair() {
    return SeparableSymbol({{Factor::bump(Point(0.5, 0), 0.5), Factor::bump(Point(0.2, 0), 1.2, 0.8)}});
}

} // namespace

TEST_CASE("fit recovers exact d = 1 data") {
    const std::vector<double> alpha = {10, 20, 40, 80, 160};
    std::vector<double> y, yv;
    for (double a : alpha) {
        y.push_back(0.3 * std::log(a) - 1.5);
        yv.push_back(0.3 * std::log(a) - 1.5 + 0.25 * a);
    }
    const LogLawFit f = fit_log_law(alpha, y, 1);
    CHECK(std::abs(f.a - 0.3) <= 1e-12);
    CHECK(std::abs(f.b + 1.5) <= 1e-11);
    CHECK_FALSE(f.has_c);
    CHECK_FALSE(f.has_d);
    CHECK(f.r2 == doctest::Approx(1.0));
    CHECK(f.points == 5);
    CHECK(f.a_standard_error <= 1e-12);
    CHECK(std::abs(evaluate(f, 1000.0, 1) - (0.3 * std::log(1000.0) - 1.5)) <= 1e-11);

    const LogLawFit v = fit_log_law(alpha, yv, 1, true);
    CHECK(v.has_d);
    CHECK(std::abs(v.a - 0.3) <= 1e-10);
    CHECK(std::abs(v.d - 0.25) <= 1e-12);
}

TEST_CASE("fit recovers exact d = 2 data") {
    const std::vector<double> alpha = {8, 12, 16, 24, 32, 40};
    std::vector<double> y, yv;
    for (double a : alpha) {
        y.push_back(0.2 * a * std::log(a) + 0.7 * a - 3.0);
        yv.push_back(y.back() + 0.05 * a * a);
    }
    const LogLawFit f = fit_log_law(alpha, y, 2);
    CHECK(f.has_c);
    CHECK(std::abs(f.a - 0.2) <= 1e-10);
    CHECK(std::abs(f.b - 0.7) <= 1e-9);
    CHECK(std::abs(f.c + 3.0) <= 1e-8);
    const LogLawFit v = fit_log_law(alpha, yv, 2, true);
    CHECK(std::abs(v.d - 0.05) <= 1e-10);
    CHECK(std::abs(evaluate(v, 50.0, 2) - (0.2 * 50 * std::log(50.0) + 0.7 * 50 - 3.0 + 0.05 * 2500)) <= 1e-7);
}

TEST_CASE("fit on noisy data reports a standard error") {
    std::mt19937 rng(17);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> alpha, y;
    for (int k = 0; k < 12; ++k) {
        alpha.push_back(16 * std::pow(2.0, k / 2.0));
        y.push_back(0.5 * std::log(alpha.back()) + 1.0 + noise(rng));
    }
    const LogLawFit f = fit_log_law(alpha, y, 1);
    CHECK(f.a_standard_error > 0.0);
    CHECK(std::abs(f.a - 0.5) <= 4 * f.a_standard_error);
    CHECK(f.r2 < 1.0);
    CHECK(f.r2 > 0.99);
}

TEST_CASE("fit preconditions") {
    CHECK_THROWS_AS(fit_log_law({1, 2, 3}, {0, 0, 0}, 1), InputError);
    CHECK_THROWS_AS(fit_log_law({1, 2, 3, 4}, {0, 0, 0}, 1), InputError);
    CHECK_THROWS_AS(fit_log_law({1, 2, 2, 4}, {0, 0, 0, 0}, 1), InputError);
    CHECK_THROWS_AS(fit_log_law({-1, 2, 3, 4}, {0, 0, 0, 0}, 1), InputError);
    CHECK_THROWS_AS(fit_log_law({1, 2, 3, 4}, {0, 0, 0, 0}, 3), InputError);
    // log(alpha) is affine in alpha to rounding over this cluster
    const std::vector<double> clustered = {1000, 1000 * (1 + 1e-13), 1000 * (1 + 2e-13), 1000 * (1 + 3e-13)};
    CHECK_THROWS_AS(fit_log_law(clustered, {1, 2, 3, 4}, 1, true), NumericalError);
}

TEST_CASE("validate rejects bad sweeps before computing") {
    CHECK_THROWS_AS(validate(interval_config(Experiment::trace_h, {})), InputError);
    CHECK_THROWS_AS(validate(interval_config(Experiment::trace_h, {10, 20, 40})), InputError);
    CHECK_THROWS_AS(validate(interval_config(Experiment::trace_h, {10, 20, 20, 40})), InputError);
    CHECK_NOTHROW(validate(interval_config(Experiment::trace_h, {10, 20, 30, 40})));
    CHECK_NOTHROW(validate(interval_config(Experiment::identity_suite, {20})));

    SweepConfig w = interval_config(Experiment::wilf, {1e2, 1e3, 1e4, 1e5});
    w.hankel.a_lo = 0.0;
    CHECK_THROWS_AS(validate(w), InputError);
    w.hankel.a_lo = 1.0;
    w.hankel.kernel = "sine";
    CHECK_THROWS_AS(validate(w), InputError);

    SweepConfig t = interval_config(Experiment::trace_t, {10, 20, 30, 40});
    t.functions = {TestFunction::indicator_above(0.2)};
    CHECK_THROWS_AS(validate(t), InputError);

    SweepConfig d2 = interval_config(Experiment::trace_h, {8, 12, 16, 24});
    d2.lambda_domain = d2.omega_domain = Domain::disk({0, 0}, 1.0);
    d2.boundary_nodes = 4;
    CHECK_THROWS_AS(validate(d2), InputError);
    d2.omega_domain = Domain::interval(-1, 1);
    d2.boundary_nodes = 64;
    CHECK_THROWS_AS(validate(d2), InputError);
}

TEST_CASE("counting above one half gives zero for a = 1") {
    SweepConfig c = interval_config(Experiment::count, {20, 30, 40, 50});
    c.grid.margin = 0.15;
    c.gate_scope = GateScope::largest;
    for (double lambda : {0.5, 0.75}) {
        c.thresholds = {lambda};
        const SweepResult r = run_sweep(c);
        REQUIRE(r.series.size() == 1);
        CHECK(r.series[0].predicted_a == 0.0);
        CHECK(r.series[0].records.size() == 4);
        for (const auto& rec : r.series[0].records) CHECK(rec.measured == 0.0);
        INFO(find(r, "n_plus_equals_n_minus").detail);
        CHECK(find(r, "n_plus_equals_n_minus").passed);
    }
}

TEST_CASE("Hilbert-Schmidt sweep is half of tr H^2") {
    const std::vector<double> alphas = {20, 30, 40, 50};
    SweepConfig hs = interval_config(Experiment::hs_norm, alphas);
    SweepConfig th = interval_config(Experiment::trace_h, alphas);
    hs.gate_scope = th.gate_scope = GateScope::none;
    hs.a = th.a = bump_pair();
    const SweepResult a = run_sweep(hs);
    const SweepResult b = run_sweep(th);
    REQUIRE(a.series[0].records.size() == 4);
    REQUIRE(b.series[0].records.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        const double half = 0.5 * b.series[0].records[i].measured;
        CHECK(std::abs(a.series[0].records[i].measured - half) <= 1e-10 * half);
        CHECK(std::isnan(a.series[0].records[i].gate_margin));
    }
    CHECK(a.series[0].predicted_a == doctest::Approx(0.5 * b.series[0].predicted_a).epsilon(1e-12));
}

TEST_CASE("tr T with g(t) = t is exactly linear on an aligned lattice") {
    // alpha L / pi = q + 1/2 with L = 2: the lattice holds 4 alpha / pi frequencies and N/4 + 1 points,
    // so tr T = (alpha / pi)(1 + 4 / N)
    std::vector<double> alphas;
    for (int q : {32, 63, 127, 254}) alphas.push_back(pi * (2 * q + 1) / 4);
    SweepConfig c = interval_config(Experiment::trace_t, alphas);
    c.functions = {TestFunction::monomial(1)};
    c.grid.points = 1024;
    c.gate_scope = GateScope::none;
    const SweepResult r = run_sweep(c);
    REQUIRE(r.series[0].fit);
    for (const auto& rec : r.series[0].records) CHECK(std::abs(rec.measured - rec.alpha / pi * (1 + 4.0 / 1024)) <= 1e-9 * rec.measured);
    CHECK(std::abs(r.series[0].fit->a) <= 1e-8);
    CHECK(std::abs(r.series[0].fit->d - 1 / pi) <= 0.02 / pi);
    CHECK(r.series[0].predicted_d);
    CHECK(r.series[0].verdict == "pass");
}

TEST_CASE("doubling gate rejections leave insufficient data") {
    SweepConfig c = interval_config(Experiment::trace_h, {20, 30, 40, 50});
    c.gate_tolerance = 1e-15;
    const SweepResult r = run_sweep(c);
    CHECK(r.series[0].records.empty());
    CHECK(r.series[0].rejected.size() == 4);
    CHECK(r.series[0].verdict == "insufficient_data");
    CHECK_FALSE(r.series[0].fit);
    for (const auto& rec : r.series[0].rejected) {
        CHECK_FALSE(rec.accepted);
        CHECK(rec.diagnostic.find("gate") != std::string::npos);
        CHECK(rec.gate_margin < 0.0);
    }
    CHECK_FALSE(r.passed());
}

TEST_CASE("a small trace_H sweep tracks the predicted coefficient") {
    SweepConfig c = interval_config(Experiment::trace_h, {20, 40, 80, 160});
    c.functions = {TestFunction::monomial(2), TestFunction::polynomial({0, 1, 1})};
    c.grid.margin = 0.15;
    const SweepResult r = run_sweep(c);
    REQUIRE(r.series.size() == 2);
    for (const auto& s : r.series) {
        REQUIRE(s.records.size() == 4);
        for (const auto& rec : s.records) {
            CHECK(rec.gated);
            CHECK(rec.gate_margin > 0.0);
        }
    }
    // the odd part of t + t^2 does not contribute
    for (std::size_t i = 0; i < 4; ++i) CHECK(r.series[0].records[i].measured == doctest::Approx(r.series[1].records[i].measured).epsilon(1e-12));
    CHECK(r.series[0].predicted_a == doctest::Approx(2 / (pi * pi)).epsilon(1e-10));
    CHECK(r.series[0].relative_error <= 0.15);
}

TEST_CASE("identity suite holds for the zero symbol and a bump pair") {
    SweepConfig zero = interval_config(Experiment::identity_suite, {10});
    zero.a = SeparableSymbol::zero();
    const SuiteReport z = identity_suite(zero);
    CHECK(z.passed());
    CHECK(find(z, "G*G=T-T^2").skipped);
    for (const auto& c : z.checks)
        if (!c.skipped) CHECK(c.deviation == 0.0);

    SweepConfig bump = interval_config(Experiment::identity_suite, {10, 15});
    bump.a = bump_pair();
    const SuiteReport b = identity_suite(bump);
    CHECK(b.passed());
    for (const auto& c : b.checks)
        if (!c.skipped) CHECK(c.deviation <= 1e-9);

    SweepConfig one = interval_config(Experiment::identity_suite, {12});
    const SuiteReport o = identity_suite(one);
    CHECK(o.passed());
    CHECK_FALSE(find(o, "G*G=T-T^2").skipped);
}

TEST_CASE("growth suite trivial cases") {
    SweepConfig xi_only = interval_config(Experiment::growth_suite, {20, 40});
    xi_only.a = SeparableSymbol({{Factor::constant(1.0), Factor::bump(Point(0.1, 0), 0.8)}});
    const SuiteReport r = growth_suite(xi_only);
    // x-independent: Op^l = Op^r, and b = 1 makes Op(a)Op(b) = Op(ab)
    CHECK(r.table[0][1] <= 1e-10);
    CHECK(r.table[0][2] <= 1e-10);
    CHECK(find(r, "bounded[S1(Op^l-Op^r)]").passed);
    CHECK(find(r, "bounded[S1(Op(a)Op(b)-Op(ab))]").passed);
    CHECK(r.columns.back() == "||G||^2_S2/log(alpha)");
}

TEST_CASE("growth suite with a mixed symbol stays bounded") {
    SweepConfig c = interval_config(Experiment::growth_suite, {20, 40, 80});
    c.a = bump_pair();
    c.weight = SeparableSymbol({{Factor::bump(Point(0.25, 0), 0.5), Factor::bump(Point(0.5, 0), 1.5)}});
    const SuiteReport r = growth_suite(c);
    const SuiteCheck& lr = find(r, "bounded[S1(Op^l-Op^r)]");
    CHECK(lr.deviation <= 2.0);
    CHECK(lr.deviation >= 1.0);
    CHECK(r.table.size() == 3 + 2);
}

TEST_CASE("Wilf sweep on the Carleman operator") {
    SweepConfig c = interval_config(Experiment::wilf, {1e2, 1e3, 1e4, 1e5});
    c.thresholds = {2.0, 0.5, 1.0};
    c.gate_scope = GateScope::largest;
    const SweepResult r = run_sweep(c);
    REQUIRE(r.series.size() == 3);
    CHECK(r.series[0].label == "lambda=0.5");
    CHECK(find(r, "norm_below_pi_and_increasing").passed);
    CHECK(find(r, "count_monotone_in_lambda").passed);
    for (const auto& s : r.series) {
        CHECK(std::isnan(s.predicted_a));
        double previous = -1;
        for (const auto& rec : s.records) {
            CHECK(rec.measured >= previous);
            previous = rec.measured;
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kuramoto/flatness.hpp"
#include "kuramoto/scenario.hpp"

using namespace kuramoto;

namespace {

constexpr double kPi = std::numbers::pi;

SyncFunction paper_sync() {
    SyncFunction f;
    f.linear_rate = 7.5;
    f.offset = 7.0;
    f.sine_amplitude = 2.0;
    f.sine_frequency = 0.5;
    f.sine_phase = 0.0;
    return f;
}

/// Brute-force oracle: integrate tau^2 gddot + 2 tau gdot + g = c with RK4.
double integrate_filter(double c, double g0, double gdot0, double tau, double t_end) {
    double g = g0, gd = gdot0;
    const int steps = 20000;
    const double h = t_end / steps;
    auto acc = [&](double gv, double gdv) { return (c - gv - 2.0 * tau * gdv) / (tau * tau); };
    for (int k = 0; k < steps; ++k) {
        const double k1g = gd, k1v = acc(g, gd);
        const double k2g = gd + 0.5 * h * k1v, k2v = acc(g + 0.5 * h * k1g, gd + 0.5 * h * k1v);
        const double k3g = gd + 0.5 * h * k2v, k3v = acc(g + 0.5 * h * k2g, gd + 0.5 * h * k2v);
        const double k4g = gd + h * k3v, k4v = acc(g + h * k3g, gd + h * k3v);
        g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
        gd += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    return g;
}

/// Bisection oracle for |A + Bt| e^{-t/tau} = tol * |c| with A = -c, B = -c/tau.
double step_response_root(double tol, double lo, double hi) {
    auto f = [&](double t) { return (1.0 + t) * std::exp(-t) - tol; };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("sync function value and derivatives") {
    const SyncFunction f = paper_sync();
    CHECK(f.value(0.0) == doctest::Approx(7.0));
    CHECK(f.rate(0.0) == doctest::Approx(8.5));
    CHECK(f.accel(0.0) == doctest::Approx(0.0));
    const double t = 3.7;
    CHECK(f.value(t) == doctest::Approx(2.0 * std::sin(0.5 * t) + 7.5 * t + 7.0));
    CHECK(f.rate(t) == doctest::Approx(std::cos(0.5 * t) + 7.5));
}

TEST_CASE("solve_offset stays at equilibrium") {
    for (double t : {0.0, 0.5, 3.0, 50.0}) {
        const OffsetState s = solve_offset(1.0, 1.0, 0.0, 0.7, t);
        CHECK(s.value == doctest::Approx(1.0));
        CHECK(s.rate == doctest::Approx(0.0));
    }
}

TEST_CASE("solve_offset matches the closed form and a brute-force integration") {
    const OffsetState s0 = solve_offset(kPi / 2.0, 0.4, 0.0, 1.0, 0.0);
    CHECK(s0.value == doctest::Approx(0.4));

    const OffsetState s = solve_offset(0.0, 1.0, 0.0, 1.0, 1.0);
    CHECK(s.value == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-9));
    CHECK(s.value == doctest::Approx(0.7357588823).epsilon(1e-9));
    CHECK(s.value == doctest::Approx(integrate_filter(0.0, 1.0, 0.0, 1.0, 1.0)).epsilon(1e-9));

    CHECK_THROWS_AS(solve_offset(0.0, 1.0, 0.0, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(solve_offset(0.0, 1.0, 0.0, -2.0, 1.0), ConfigError);
}

TEST_CASE("filter residual is zero for randomized parameters") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> par(-10.0, 10.0);
    std::uniform_real_distribution<double> tau_dist(0.1, 5.0);
    std::uniform_real_distribution<double> t_dist(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const double c = par(gen), g0 = par(gen), gd0 = par(gen);
        const double tau = tau_dist(gen);
        const double t = t_dist(gen) * 10.0 * tau;
        const OffsetState s = solve_offset(c, g0, gd0, tau, t);
        const double residual = tau * tau * s.accel + 2.0 * tau * s.rate + s.value - c;
        CHECK(std::abs(residual) < 1e-9);
    }
}

TEST_CASE("solve_offset rate matches central finite differences") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> par(-5.0, 5.0);
    const double h = 1e-5;
    for (int rep = 0; rep < 100; ++rep) {
        const double c = par(gen), g0 = par(gen), gd0 = par(gen);
        const double tau = 0.5 + std::abs(par(gen));
        const double t = h + std::abs(par(gen));
        const double fwd = solve_offset(c, g0, gd0, tau, t + h).value;
        const double bwd = solve_offset(c, g0, gd0, tau, t - h).value;
        const double fd = (fwd - bwd) / (2.0 * h);
        const double rate = solve_offset(c, g0, gd0, tau, t).rate;
        const double scale = std::max({1e-6, std::abs(fd), std::abs(rate)});
        CHECK(std::abs(rate - fd) / scale < 1e-6);
    }
}

TEST_CASE("settle_time on the unit step response") {
    ReferencePlan plan;
    plan.sync = SyncFunction{};
    plan.offsets = {1.0};
    plan.tau = 1.0;
    plan.offset_init = {0.0};
    plan.offset_rate_init = {0.0};

    SUBCASE("tolerance 0.001 settles just past nine time constants") {
        plan.settle_tol = 1e-3;
        const double root = step_response_root(1e-3, 1.0, 20.0);
        CHECK(root == doctest::Approx(9.2334).epsilon(1e-3));
        // grid search returns the first tenth-of-tau point past the root
        CHECK(settle_time(plan) == doctest::Approx(0.1 * std::ceil(root / 0.1)));
        CHECK(settle_time(plan) == doctest::Approx(9.3));
    }

    SUBCASE("tolerance 0.5 settles near 1.7 time constants") {
        plan.settle_tol = 0.5;
        CHECK(settle_time(plan) == doctest::Approx(1.7));
    }

    SUBCASE("already settled plans report the first grid point") {
        plan.offset_init = {1.0};
        CHECK(settle_time(plan) == doctest::Approx(0.1));
    }

    SUBCASE("scaling tau scales the settling time") {
        plan.settle_tol = 1e-3;
        plan.tau = 2.5;
        CHECK(settle_time(plan) == doctest::Approx(2.5 * 9.3));
    }

    SUBCASE("error paths") {
        plan.settle_tol = 0.0;
        CHECK_THROWS_AS(settle_time(plan), ConfigError);
        plan.settle_tol = 1e-3;
        plan.offsets = {0.0};
        CHECK_THROWS_AS(settle_time(plan), ConfigError);
        // far start against a tiny target never reaches 0.1% within 20 tau
        plan.offsets = {1e-4};
        plan.offset_init = {10.0};
        CHECK_THROWS_AS(settle_time(plan), InfeasiblePlanError);
    }
}

TEST_CASE("reference_state starts at the nominal phases and tracks fdot") {
    const SimulationConfig cfg = preset("paper-multiplicative");
    std::vector<double> theta(3), rate(3);
    reference_state(cfg.plan, 0.0, theta, rate);
    CHECK(theta[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(theta[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(theta[2] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rate[0] == doctest::Approx(8.5));  // gdot(0) = 0, so fdot(0)

    // far into the run the rates live inside the fdot band [6.5, 8.5]
    for (double t : {20.0, 27.3, 39.0}) {
        reference_state(cfg.plan, t, theta, rate);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(rate[i] == doctest::Approx(std::cos(0.5 * t) + 7.5).epsilon(1e-6));
            CHECK(rate[i] > 6.49);
            CHECK(rate[i] < 8.51);
        }
    }
}

TEST_CASE("settling contract holds at the computed settling time") {
    for (const char* name : {"paper-multiplicative", "paper-additive"}) {
        const SimulationConfig cfg = preset(name);
        const double t_f = settle_time(cfg.plan);
        CHECK(t_f == doctest::Approx(11.1));
        for (std::size_t i = 0; i < cfg.plan.size(); ++i) {
            const double c = cfg.plan.offsets[i];
            REQUIRE(c != 0.0);
            const OffsetState g = solve_offset(c, cfg.plan.offset_init[i],
                                               cfg.plan.offset_rate_init[i], cfg.plan.tau, t_f);
            CHECK(std::abs(g.value - c) / std::abs(c) <= 1e-3);
        }
    }
}

TEST_CASE("additive nominal control vanishes when the reference is synchronous at omega") {
    // equal offsets and matched rate: theta* equal, thetadot* = omega
    NetworkModel m = NetworkModel::complete(2, {3.0, 3.0}, 1.0, ControlMode::additive);
    SyncFunction f;
    f.linear_rate = 3.0;
    ReferencePlan plan;
    plan.sync = f;
    plan.offsets = {0.0, 0.0};
    plan.tau = 1.0;
    plan.offset_init = {0.0, 0.0};
    plan.offset_rate_init = {0.0, 0.0};
    const auto u = nominal_control(plan, m, 2.0);
    CHECK(u[0] == 0.0);
    CHECK(u[1] == 0.0);
}

TEST_CASE("multiplicative nominal control at the settled offsets") {
    const SimulationConfig cfg = preset("paper-multiplicative");
    const double t = 30.0;  // transients are ~1e-11 here
    const auto u = nominal_control(cfg.plan, cfg.model, t);
    const double fdot = std::cos(0.5 * t) + 7.5;
    // denominators at the offsets: D1 = sin(0) + sin(pi/2) = 1, D2 = 1, D3 = -2
    CHECK(u[0] == doctest::Approx(3.0 * (fdot - 5.0) / 1.0).epsilon(1e-8));
    CHECK(u[1] == doctest::Approx(3.0 * (fdot - 7.0) / 1.0).epsilon(1e-8));
    CHECK(u[2] == doctest::Approx(3.0 * (fdot - 8.0) / -2.0).epsilon(1e-8));
}

TEST_CASE("multiplicative control throws on a singular reference") {
    // equal offsets: every pairwise reference difference decays to zero
    NetworkModel m = NetworkModel::complete(3, {5.0, 7.0, 8.0}, 1.0,
                                            ControlMode::multiplicative);
    ReferencePlan plan;
    plan.sync = paper_sync();
    plan.offsets = {1.0, 1.0, 1.0};
    plan.tau = 1.0;
    plan.offset_init = {0.9, 1.0, 1.1};
    plan.offset_rate_init = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS((void)nominal_control(plan, m, 15.0), SingularityError);
    try {
        (void)nominal_control(plan, m, 15.0);
    } catch (const SingularityError& e) {
        CHECK(e.time() == doctest::Approx(15.0));
    }
}

TEST_CASE("validate_plan on the bundled experiments") {
    SUBCASE("multiplicative preset: no violations, condition-3 warnings only") {
        const SimulationConfig cfg = preset("paper-multiplicative");
        const ValidationReport r = validate_plan(cfg.plan, cfg.model, 40.0, 0.01);
        CHECK(r.ok());
        CHECK(r.violations.empty());
        // u*_2 and u*_3 periodically dip below zero at the settled offsets
        CHECK(r.warnings.size() > 0);
        for (const auto& w : r.warnings) CHECK(w.condition == 3);
    }

    SUBCASE("additive preset: clean report") {
        const SimulationConfig cfg = preset("paper-additive");
        const ValidationReport r = validate_plan(cfg.plan, cfg.model, 40.0, 0.01);
        CHECK(r.ok());
        CHECK(r.warnings.empty());
    }

    SUBCASE("equal offsets violate condition 1 in multiplicative mode") {
        SimulationConfig cfg = preset("paper-multiplicative");
        cfg.plan.offsets = {0.0, 0.0, 0.0};
        const ValidationReport r = validate_plan(cfg.plan, cfg.model, 40.0, 0.01);
        CHECK_FALSE(r.ok());
        bool all_oscillators = true;
        for (std::size_t i = 0; i < 3; ++i) {
            bool found = false;
            for (const auto& v : r.violations) {
                if (v.condition == 1 && v.oscillator == i) found = true;
            }
            all_oscillators = all_oscillators && found;
        }
        CHECK(all_oscillators);
    }

    SUBCASE("a reference whose rate changes sign violates condition 2") {
        SimulationConfig cfg = preset("paper-multiplicative");
        cfg.plan.sync.linear_rate = 0.0;  // fdot = cos(0.5 t), negative half the time
        const ValidationReport r = validate_plan(cfg.plan, cfg.model, 40.0, 0.01);
        bool condition2 = false;
        for (const auto& v : r.violations) {
            if (v.condition == 2) condition2 = true;
        }
        CHECK(condition2);
    }
}

TEST_CASE("issue descriptions carry 1-based oscillator labels") {
    const PlanIssue issue{1, 1, 2.5};
    const std::string text = issue.describe();
    CHECK(text.find("oscillator 2") != std::string::npos);
    CHECK(text.find("condition 1") != std::string::npos);
}

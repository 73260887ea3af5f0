#include "kuramoto/sim.hpp"

#include <cmath>
#include <cstdio>

#include "kuramoto/rng.hpp"

namespace kuramoto {

namespace {

/// One classical 4-stage Runge-Kutta step of the true plant under a held
/// control vector. `k1` must already hold plant_rhs at `phases`.
void rk4_step_held(std::vector<double>& phases, std::span<const double> controls,
                   const NetworkModel& model, const UncertaintySet& unc, double dt,
                   std::span<const double> k1, std::vector<double>& stage,
                   std::vector<double>& k2, std::vector<double>& k3, std::vector<double>& k4,
                   std::vector<double>& sums) {
    const std::size_t n = model.n;
    for (std::size_t i = 0; i < n; ++i) stage[i] = phases[i] + 0.5 * dt * k1[i];
    plant_rhs_into(stage, controls, model, unc, sums, k2);
    for (std::size_t i = 0; i < n; ++i) stage[i] = phases[i] + 0.5 * dt * k2[i];
    plant_rhs_into(stage, controls, model, unc, sums, k3);
    for (std::size_t i = 0; i < n; ++i) stage[i] = phases[i] + dt * k3[i];
    plant_rhs_into(stage, controls, model, unc, sums, k4);
    for (std::size_t i = 0; i < n; ++i) {
        phases[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

[[noreturn]] void throw_diverged(double t, std::size_t i, double value) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "simulation diverged at t=%.6g: oscillator %zu rate %.3e exceeds guard %.0e",
                  t, i + 1, value, kDivergenceGuard);
    throw DivergenceError(buf, t);
}

} // namespace

void SimulationConfig::validate() const {
    model.validate();
    unc.validate(model.n);
    plan.validate();
    if (plan.size() != model.n) {
        throw ConfigError("plan and network disagree on the oscillator count");
    }
    if (!(sampling_period > 0.0)) throw ConfigError("sampling period must be positive");
    if (!(horizon >= window_horizon)) {
        throw ConfigError("horizon must be at least the estimator window horizon");
    }
    if (kp.size() != model.n) throw ConfigError("kp must have one entry per oscillator");
    for (double k : kp) {
        if (!(k > 0.0)) throw ConfigError("proportional gains must be positive");
    }
    if (!(noise_std >= 0.0)) throw ConfigError("noise standard deviation must be non-negative");
    if (initial_phases.size() != model.n) {
        throw ConfigError("initial phases must have one entry per oscillator");
    }
    // Window consistency is enforced by the EstimatorWindow constructor; fail
    // early here so a bad scenario is reported before any work happens.
    EstimatorWindow probe(window_horizon, sampling_period);
    (void)probe;
}

std::size_t SimulationTrace::count_events(EventKind kind) const {
    std::size_t c = 0;
    for (const auto& e : events) {
        if (e.kind == kind) ++c;
    }
    return c;
}

SimulationTrace run(const SimulationConfig& config) {
    config.validate();

    const ValidationReport report =
        validate_plan(config.plan, config.model, config.horizon, config.sampling_period);
    if (!report.ok() && !config.force_run) {
        throw RefusedRunError("reference plan failed validation with " +
                                  std::to_string(report.violations.size()) + " violation(s)",
                              report);
    }

    const std::size_t n = config.model.n;
    const double dt = config.sampling_period;
    const auto steps = static_cast<std::size_t>(std::llround(config.horizon / dt));
    if (steps == 0) throw ConfigError("horizon shorter than a single sampling period");

    SimulationTrace trace;
    trace.n = n;
    trace.times.reserve(steps + 1);
    for (auto* series : {&trace.theta, &trace.theta_star, &trace.thetadot,
                         &trace.thetadot_star, &trace.u, &trace.u_star,
                         &trace.delta_theta, &trace.f_est}) {
        series->reserve((steps + 1) * n);
    }

    std::vector<IpController> controllers;
    controllers.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        controllers.emplace_back(config.kp[i], config.window_horizon, dt);
    }

    GaussianNoise noise(config.rng_seed);
    std::vector<double> phases = config.initial_phases;
    std::vector<double> u(n), u_star(n), alphas(n), delta_u(n), f_est(n);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n), sums(n);

    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const ReferenceSample ref = sample_reference(config.plan, config.model, t);
        nominal_control_into(ref, config.model, t, u_star);
        homeostat_gains_into(ref, config.model, alphas);

        for (std::size_t i = 0; i < n; ++i) {
            const double measured =
                phases[i] + (config.noise_std > 0.0 ? noise.sample(config.noise_std) : 0.0);
            const double delta_measured = measured - ref.theta_star[i];
            const IpDecision d =
                controllers[i].update(delta_measured, alphas[i], config.open_loop);
            delta_u[i] = d.delta_u;
            f_est[i] = d.disturbance_estimate;
            if (!config.open_loop) {
                if (d.warmup) trace.events.push_back({t, i, EventKind::estimator_warmup});
                if (d.guard) trace.events.push_back({t, i, EventKind::alpha_guard});
            }
            u[i] = u_star[i] + delta_u[i];
        }

        plant_rhs_into(phases, u, config.model, config.unc, sums, k1);

        trace.times.push_back(t);
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(phases[i]) || !std::isfinite(k1[i]) ||
                std::abs(k1[i]) > kDivergenceGuard) {
                throw_diverged(t, i, k1[i]);
            }
            trace.theta.push_back(phases[i]);
            trace.theta_star.push_back(ref.theta_star[i]);
            trace.thetadot.push_back(k1[i]);
            trace.thetadot_star.push_back(ref.theta_dot_star[i]);
            trace.u.push_back(u[i]);
            trace.u_star.push_back(u_star[i]);
            trace.delta_theta.push_back(phases[i] - ref.theta_star[i]);
            trace.f_est.push_back(f_est[i]);
        }

        if (k < steps) {
            rk4_step_held(phases, u, config.model, config.unc, dt, k1, stage, k2, k3, k4, sums);
        }
    }
    return trace;
}

SyncMetrics metrics(const SimulationTrace& trace, double t_f) {
    if (trace.rows() == 0) throw ConfigError("metrics of an empty trace");
    if (!(t_f < trace.times.back())) {
        throw ConfigError("t_f must fall inside the recorded horizon");
    }
    const std::size_t n = trace.n;
    SyncMetrics m;
    m.rms_delta_theta.assign(n, 0.0);
    m.max_abs_delta_theta.assign(n, 0.0);
    std::size_t tail_rows = 0;
    for (std::size_t row = 0; row < trace.rows(); ++row) {
        if (trace.times[row] < t_f - 1e-9) continue;
        ++tail_rows;
        double lo = trace.at(trace.thetadot, row, 0);
        double hi = lo;
        for (std::size_t i = 0; i < n; ++i) {
            const double rate = trace.at(trace.thetadot, row, i);
            lo = std::min(lo, rate);
            hi = std::max(hi, rate);
            const double d = trace.at(trace.delta_theta, row, i);
            m.rms_delta_theta[i] += d * d;
            m.max_abs_delta_theta[i] = std::max(m.max_abs_delta_theta[i], std::abs(d));
        }
        m.sync_error = std::max(m.sync_error, hi - lo);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += m.rms_delta_theta[i];
        m.rms_delta_theta[i] = std::sqrt(m.rms_delta_theta[i] / static_cast<double>(tail_rows));
        m.max_abs_delta_theta_overall =
            std::max(m.max_abs_delta_theta_overall, m.max_abs_delta_theta[i]);
    }
    m.rms_delta_theta_overall =
        std::sqrt(total / static_cast<double>(tail_rows * n));
    return m;
}

double flat_open_loop_error(const ReferencePlan& plan, const NetworkModel& model,
                            const UncertaintySet& unc, double horizon, double dt) {
    plan.validate();
    model.validate();
    unc.validate(model.n);
    const std::size_t n = model.n;
    const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));

    std::vector<double> phases(n), scratch_dot(n);
    reference_state(plan, 0.0, phases, scratch_dot);

    std::vector<double> u(n), k1(n), k2(n), k3(n), k4(n), stage(n), sums(n);
    auto eval = [&](double t, const std::vector<double>& y, std::vector<double>& dy) {
        const ReferenceSample ref = sample_reference(plan, model, t);
        nominal_control_into(ref, model, t, u);
        plant_rhs_into(y, u, model, unc, sums, dy);
    };

    double worst = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const ReferenceSample ref = sample_reference(plan, model, t);
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(phases[i] - ref.theta_star[i]));
        }
        if (k == steps) break;
        eval(t, phases, k1);
        for (std::size_t i = 0; i < n; ++i) stage[i] = phases[i] + 0.5 * dt * k1[i];
        eval(t + 0.5 * dt, stage, k2);
        for (std::size_t i = 0; i < n; ++i) stage[i] = phases[i] + 0.5 * dt * k2[i];
        eval(t + 0.5 * dt, stage, k3);
        for (std::size_t i = 0; i < n; ++i) stage[i] = phases[i] + dt * k3[i];
        eval(t + dt, stage, k4);
        for (std::size_t i = 0; i < n; ++i) {
            phases[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    return worst;
}

} // namespace kuramoto

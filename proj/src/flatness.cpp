#include "kuramoto/flatness.hpp"

#include <cmath>
#include <cstdio>

namespace kuramoto {

double SyncFunction::value(double t) const {
    return sine_amplitude * std::sin(sine_frequency * t + sine_phase) + linear_rate * t + offset;
}

double SyncFunction::rate(double t) const {
    return sine_amplitude * sine_frequency * std::cos(sine_frequency * t + sine_phase) +
           linear_rate;
}

double SyncFunction::accel(double t) const {
    return -sine_amplitude * sine_frequency * sine_frequency *
           std::sin(sine_frequency * t + sine_phase);
}

OffsetState solve_offset(double target, double init, double init_rate, double tau, double t) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw ConfigError("filter time constant must be positive, got " + std::to_string(tau));
    }
    const double a = init - target;
    const double b = init_rate + a / tau;
    const double decay = std::exp(-t / tau);
    const double poly = a + b * t;
    OffsetState s;
    s.value = target + poly * decay;
    s.rate = (b - poly / tau) * decay;
    s.accel = (poly / (tau * tau) - 2.0 * b / tau) * decay;
    return s;
}

void ReferencePlan::validate() const {
    const std::size_t n = offsets.size();
    if (n == 0) throw ConfigError("reference plan has no oscillators");
    if (offset_init.size() != n || offset_rate_init.size() != n) {
        throw ConfigError("plan initial conditions must match the offset count");
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw ConfigError("filter time constant must be positive");
    }
}

ReferencePlan ReferencePlan::from_initial_phases(SyncFunction sync, std::vector<double> offsets,
                                                 double tau,
                                                 std::span<const double> initial_phases,
                                                 double settle_tol) {
    if (initial_phases.size() != offsets.size()) {
        throw ConfigError("initial phases must match the offset count");
    }
    ReferencePlan plan;
    plan.sync = sync;
    plan.offsets = std::move(offsets);
    plan.tau = tau;
    plan.settle_tol = settle_tol;
    const double f0 = sync.value(0.0);
    plan.offset_init.resize(initial_phases.size());
    plan.offset_rate_init.assign(initial_phases.size(), 0.0);
    for (std::size_t i = 0; i < initial_phases.size(); ++i) {
        plan.offset_init[i] = initial_phases[i] - f0;
    }
    plan.validate();
    return plan;
}

void reference_state(const ReferencePlan& plan, double t,
                     std::span<double> theta_star, std::span<double> theta_dot_star) {
    const double f = plan.sync.value(t);
    const double fdot = plan.sync.rate(t);
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const OffsetState g = solve_offset(plan.offsets[i], plan.offset_init[i],
                                           plan.offset_rate_init[i], plan.tau, t);
        theta_star[i] = g.value + f;
        theta_dot_star[i] = g.rate + fdot;
    }
}

ReferenceSample sample_reference(const ReferencePlan& plan, const NetworkModel& model, double t) {
    ReferenceSample s;
    s.theta_star.resize(plan.size());
    s.theta_dot_star.resize(plan.size());
    s.coupling.resize(plan.size());
    reference_state(plan, t, s.theta_star, s.theta_dot_star);
    coupling_sums(s.theta_star, model, s.coupling);
    return s;
}

double settle_time(const ReferencePlan& plan) {
    plan.validate();
    if (!(plan.settle_tol > 0.0) || !(plan.settle_tol < 1.0)) {
        throw ConfigError("settle tolerance must lie in (0, 1)");
    }
    bool any_nonzero = false;
    for (double c : plan.offsets) {
        if (c != 0.0) any_nonzero = true;
    }
    if (!any_nonzero) {
        throw ConfigError("settling time is undefined when every offset is zero");
    }

    constexpr int kGridPerTau = 10;
    constexpr int kMaxTau = 20;
    const int points = kGridPerTau * kMaxTau;
    const double dt = plan.tau / kGridPerTau;

    // The critically damped response can overshoot once before its monotone
    // tail, so require the bound to hold from the candidate point onwards.
    int last_bad = 0;
    for (int k = 1; k <= points; ++k) {
        const double t = k * dt;
        for (std::size_t i = 0; i < plan.size(); ++i) {
            const double c = plan.offsets[i];
            if (c == 0.0) continue;
            const OffsetState g = solve_offset(c, plan.offset_init[i],
                                               plan.offset_rate_init[i], plan.tau, t);
            if (std::abs(g.value - c) / std::abs(c) > plan.settle_tol) {
                last_bad = k;
                break;
            }
        }
    }
    if (last_bad >= points) {
        throw InfeasiblePlanError("offsets do not settle to tolerance " +
                                  std::to_string(plan.settle_tol) + " within 20 tau");
    }
    return (last_bad + 1) * dt;
}

void nominal_control_into(const ReferenceSample& ref, const NetworkModel& model, double t,
                          std::span<double> out) {
    const std::size_t n = model.n;
    const double k_over_n = model.coupling / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double drive = ref.theta_dot_star[i] - model.omega[i];
        if (model.mode == ControlMode::multiplicative) {
            if (std::abs(ref.coupling[i]) < kDenomEpsilon) {
                char buf[128];
                std::snprintf(buf, sizeof buf,
                              "coupling denominator %.3e below %.0e for oscillator %zu at t=%.6g",
                              ref.coupling[i], kDenomEpsilon, i + 1, t);
                throw SingularityError(buf, i, t);
            }
            out[i] = drive / (k_over_n * ref.coupling[i]);
        } else {
            out[i] = drive - k_over_n * ref.coupling[i];
        }
    }
}

std::vector<double> nominal_control(const ReferencePlan& plan, const NetworkModel& model,
                                    double t) {
    const ReferenceSample ref = sample_reference(plan, model, t);
    std::vector<double> out(model.n);
    nominal_control_into(ref, model, t, out);
    return out;
}

std::string PlanIssue::describe() const {
    static const char* kWhat[] = {
        "",
        "coupling denominator within epsilon of zero",
        "reference rate not positive",
        "nominal control not positive",
    };
    char buf[128];
    std::snprintf(buf, sizeof buf, "condition %d (%s): oscillator %zu at t=%.6g",
                  condition, kWhat[condition], oscillator + 1, time);
    return buf;
}

ValidationReport validate_plan(const ReferencePlan& plan, const NetworkModel& model,
                               double horizon, double step) {
    plan.validate();
    model.validate();
    if (plan.size() != model.n) {
        throw ConfigError("plan and network disagree on the oscillator count");
    }
    if (!(horizon > 0.0) || !(step > 0.0)) {
        throw ConfigError("validation horizon and step must be positive");
    }

    ValidationReport report;
    const bool multiplicative = model.mode == ControlMode::multiplicative;
    const double k_over_n = model.coupling / static_cast<double>(model.n);
    const auto steps = static_cast<std::size_t>(horizon / step);
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = k * step;
        const ReferenceSample ref = sample_reference(plan, model, t);
        for (std::size_t i = 0; i < model.n; ++i) {
            if (multiplicative && std::abs(ref.coupling[i]) < kDenomEpsilon) {
                report.violations.push_back({1, i, t});
            }
            if (ref.theta_dot_star[i] <= 0.0) {
                report.violations.push_back({2, i, t});
            }
            if (multiplicative && std::abs(ref.coupling[i]) >= kDenomEpsilon) {
                const double u = (ref.theta_dot_star[i] - model.omega[i]) /
                                 (k_over_n * ref.coupling[i]);
                if (u <= 0.0) {
                    report.warnings.push_back({3, i, t});
                }
            }
        }
    }
    return report;
}

} // namespace kuramoto

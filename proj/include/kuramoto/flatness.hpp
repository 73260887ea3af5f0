#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kuramoto/errors.hpp"
#include "kuramoto/model.hpp"

namespace kuramoto {

/// Multiplicative denominators smaller than this are treated as singular.
inline constexpr double kDenomEpsilon = 1e-3;

/// Synchronization profile f(t) every oscillator converges onto:
/// affine ramp plus one sinusoid, with analytic first and second derivatives.
struct SyncFunction {
    double linear_rate = 0.0;     ///< rad/s
    double offset = 0.0;          ///< rad
    double sine_amplitude = 0.0;  ///< rad
    double sine_frequency = 0.0;  ///< rad/s
    double sine_phase = 0.0;      ///< rad

    double value(double t) const;
    double rate(double t) const;
    double accel(double t) const;
};

/// Value and first two derivatives of one per-oscillator offset trajectory.
struct OffsetState {
    double value = 0.0;
    double rate = 0.0;
    double accel = 0.0;
};

/// Closed-form solution of the critically damped settling filter
///   tau^2 * gddot + 2 tau * gdot + g = target
/// from g(0) = init, gdot(0) = init_rate:
///   g(t) = target + (A + B t) exp(-t/tau),  A = init - target,  B = init_rate + A/tau.
/// Throws ConfigError for tau <= 0.
OffsetState solve_offset(double target, double init, double init_rate, double tau, double t);

/// Per-oscillator reference trajectories theta*_i(t) = g_i(t) + f(t), where
/// each g_i runs through the settling filter towards its steady offset.
struct ReferencePlan {
    SyncFunction sync;
    std::vector<double> offsets;           ///< steady per-oscillator offsets c_i, rad
    double tau = 1.0;                      ///< filter time constant, s
    std::vector<double> offset_init;       ///< g_i(0), rad
    std::vector<double> offset_rate_init;  ///< gdot_i(0), rad/s
    double settle_tol = 1e-3;              ///< relative settling tolerance

    std::size_t size() const { return offsets.size(); }

    void validate() const;

    /// Plan whose reference starts exactly at the given nominal initial phases:
    /// g_i(0) = theta_i(0) - f(0) and gdot_i(0) = 0, so theta*(0) equals the
    /// nominal initial state and thetadot*(0) = fdot(0).
    static ReferencePlan from_initial_phases(SyncFunction sync, std::vector<double> offsets,
                                             double tau,
                                             std::span<const double> initial_phases,
                                             double settle_tol = 1e-3);
};

/// theta*, thetadot*, and the coupling row sums S_i(theta*) at one instant.
struct ReferenceSample {
    std::vector<double> theta_star;
    std::vector<double> theta_dot_star;
    std::vector<double> coupling;  ///< S_i(theta*) = sum_j a_ij sin(theta*_j - theta*_i)
};

/// theta*_i(t) = g_i(t) + f(t), thetadot*_i(t) = gdot_i(t) + fdot(t).
void reference_state(const ReferencePlan& plan, double t,
                     std::span<double> theta_star, std::span<double> theta_dot_star);

ReferenceSample sample_reference(const ReferencePlan& plan, const NetworkModel& model, double t);

/// Earliest grid time (multiples of tau/10, up to 20 tau) at which every
/// oscillator with a nonzero offset satisfies
///   |g_i(t) - c_i| / |c_i| <= settle_tol
/// and keeps satisfying it at all later grid points. Throws
/// InfeasiblePlanError when no such time exists within 20 tau, and
/// ConfigError when settle_tol is outside (0,1) or every offset is zero.
double settle_time(const ReferencePlan& plan);

/// Open-loop control recovered from the flat outputs, using the nominal model.
///
/// Multiplicative: u*_i = N (thetadot*_i - omega_i) / (K S_i(theta*)); throws
/// SingularityError when |S_i| < kDenomEpsilon.
/// Additive:       u*_i = thetadot*_i - omega_i - (K/N) S_i(theta*).
void nominal_control_into(const ReferenceSample& ref, const NetworkModel& model, double t,
                          std::span<double> out);

std::vector<double> nominal_control(const ReferencePlan& plan, const NetworkModel& model,
                                    double t);

/// One reference-trajectory defect found by validate_plan.
struct PlanIssue {
    int condition = 0;         ///< 1 = vanishing denominator, 2 = thetadot* <= 0, 3 = u* <= 0
    std::size_t oscillator = 0;
    double time = 0.0;

    std::string describe() const;
};

/// Sampled feasibility check of a reference plan.
///
/// Hard violations refuse a run: condition (1), |S_i(theta*)| < kDenomEpsilon
/// (multiplicative only), and condition (2), thetadot*_i <= 0. Condition (3),
/// u*_i <= 0 in multiplicative mode, is reported as a warning only: it does
/// not make the inversion singular, and trajectories that are otherwise fine
/// routinely brush it.
struct ValidationReport {
    std::vector<PlanIssue> violations;
    std::vector<PlanIssue> warnings;

    bool ok() const { return violations.empty(); }
};

ValidationReport validate_plan(const ReferencePlan& plan, const NetworkModel& model,
                               double horizon, double step);

} // namespace kuramoto

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kuramoto/errors.hpp"
#include "kuramoto/flatness.hpp"
#include "kuramoto/heol.hpp"
#include "kuramoto/model.hpp"

namespace kuramoto {

/// |thetadot| beyond this aborts the run as diverged.
inline constexpr double kDivergenceGuard = 1e6;

struct SimulationConfig {
    NetworkModel model;
    UncertaintySet unc;    ///< identity set for the nominal plant
    ReferencePlan plan;
    double sampling_period = 0.01;       ///< controller and measurement period T_e, s
    double horizon = 40.0;               ///< total simulated time, s
    double noise_std = 0.0;              ///< measurement noise sigma, rad
    std::vector<double> kp;              ///< per-oscillator proportional gains, 1/s
    double window_horizon = 0.3;         ///< estimator window T, s
    std::uint64_t rng_seed = 0;
    std::vector<double> initial_phases;  ///< true plant start (init_scale already applied), rad
    bool open_loop = false;              ///< force delta_u = 0 (flat control only)
    bool force_run = false;              ///< run even when plan validation fails

    void validate() const;
};

enum class EventKind { alpha_guard, estimator_warmup };

struct TraceEvent {
    double time = 0.0;
    std::size_t oscillator = 0;
    EventKind kind = EventKind::alpha_guard;
};

/// Column-per-signal recording of one run. Every series holds
/// (horizon / sampling_period + 1) rows of n values, row-major.
/// delta_theta is the true tracking error theta - theta*; the controller only
/// ever saw its noisy measurement. thetadot is the true plant rate under the
/// control held from each row's instant.
struct SimulationTrace {
    std::size_t n = 0;
    std::vector<double> times;
    std::vector<double> theta;
    std::vector<double> theta_star;
    std::vector<double> thetadot;
    std::vector<double> thetadot_star;
    std::vector<double> u;
    std::vector<double> u_star;
    std::vector<double> delta_theta;
    std::vector<double> f_est;
    std::vector<TraceEvent> events;

    std::size_t rows() const { return times.size(); }
    double at(const std::vector<double>& series, std::size_t row, std::size_t i) const {
        return series[row * n + i];
    }
    std::size_t count_events(EventKind kind) const;
};

/// Run is refused because the reference plan failed validation.
class RefusedRunError : public std::runtime_error {
public:
    RefusedRunError(std::string msg, ValidationReport report)
        : std::runtime_error(std::move(msg)), report_(std::move(report)) {}

    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// Closed-loop experiment: zero-order-hold control at the sampling period,
/// RK4 plant integration between samples, Gaussian measurement noise, one
/// HEOL corrector per oscillator. Throws RefusedRunError when the plan fails
/// validation (unless force_run), DivergenceError on blow-up.
SimulationTrace run(const SimulationConfig& config);

struct SyncMetrics {
    double sync_error = 0.0;                ///< max over t >= t_f of spread of true thetadot
    std::vector<double> rms_delta_theta;    ///< per oscillator, t >= t_f
    std::vector<double> max_abs_delta_theta;
    double rms_delta_theta_overall = 0.0;
    double max_abs_delta_theta_overall = 0.0;
};

/// Synchronization and tracking quality over the tail t >= t_f.
SyncMetrics metrics(const SimulationTrace& trace, double t_f);

/// Pure flatness check: integrate the true plant under the open-loop control
/// u(t) = nominal_control(t), evaluated at every integrator stage (no
/// zero-order hold), from theta(0) = theta*(0). Returns the largest
/// |theta_i(t) - theta*_i(t)| seen on the step grid. With the identity
/// uncertainty set this measures only inversion + integration error.
double flat_open_loop_error(const ReferencePlan& plan, const NetworkModel& model,
                            const UncertaintySet& unc, double horizon, double dt);

} // namespace kuramoto

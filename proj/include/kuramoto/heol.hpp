#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kuramoto/errors.hpp"
#include "kuramoto/flatness.hpp"
#include "kuramoto/model.hpp"

namespace kuramoto {

/// Below this input gain the corrector holds delta_u = 0 instead of dividing.
inline constexpr double kAlphaFloor = 1e-3;

/// Input gain alpha_i of the error dynamics d(delta_theta_i)/dt = F_i + alpha_i delta_u_i,
/// evaluated on the reference trajectory (noise-free by construction):
/// (K/N) * S_i(theta*) in multiplicative mode, exactly 1 in additive mode.
double homeostat_gain(std::size_t i, std::span<const double> theta_star,
                      const NetworkModel& model);

/// Same, reusing the precomputed coupling sums of a ReferenceSample.
void homeostat_gains_into(const ReferenceSample& ref, const NetworkModel& model,
                          std::span<double> out);

/// Sliding window behind the disturbance estimator
///
///   F_est = -(6/T^3) * integral_0^T [ (T - 2s) dtheta(s + t - T)
///                                     + s (T - s) (alpha du)(s + t - T) ] ds
///
/// over the most recent T seconds of samples pushed at the controller period.
///
/// Discretization: the window spans T with T/period intervals, so it holds
/// T/period + 1 samples. The dtheta term integrates the linear kernel against
/// the piecewise-linear interpolant of the samples exactly; the alpha*du term
/// integrates the quadratic kernel exactly per interval against the held
/// (zero-order-hold) value, which is the sample pushed at the interval's right
/// endpoint. Plain node-wise trapezoid on the products would leave an O((period/T)^2)
/// bias that a linear dtheta already exposes; these weights reproduce a ramp's
/// slope and a constant disturbance to rounding error.
class EstimatorWindow {
public:
    /// horizon = T, period = sampling interval; horizon must be a positive
    /// integer multiple of period.
    EstimatorWindow(double horizon, double period);

    /// Append one sample; alpha_delta_u is the product held on the interval
    /// leading up to this sample. Oldest sample is evicted once full.
    void push(double delta_theta, double alpha_delta_u);

    bool full() const { return count_ == capacity_; }
    std::size_t size() const { return count_; }
    std::size_t capacity() const { return capacity_; }
    double horizon() const { return horizon_; }
    double period() const { return period_; }

    /// Disturbance estimate, or nullopt until the window is full.
    std::optional<double> estimate() const;

    void clear();

private:
    double horizon_;
    double period_;
    std::size_t capacity_;  ///< samples held = horizon/period + 1
    std::vector<double> theta_weights_;
    std::vector<double> control_weights_;
    std::vector<double> delta_theta_;
    std::vector<double> alpha_delta_u_;
    std::size_t head_ = 0;  ///< index of the oldest sample
    std::size_t count_ = 0;
};

/// Intelligent proportional law: delta_u = -(f_est + kp * delta_theta) / alpha.
double ip_law(double f_est, double kp, double delta_theta, double alpha);

/// What one controller update decided.
struct IpDecision {
    double delta_u = 0.0;
    double disturbance_estimate = 0.0;
    bool warmup = false;  ///< window not yet full, correction held at zero
    bool guard = false;   ///< |alpha| below the floor, correction held at zero
};

/// Per-oscillator closed-loop corrector: estimator window plus iP law.
/// Single-owner mutable; distinct oscillators' controllers are independent.
class IpController {
public:
    IpController(double kp, double window_horizon, double period,
                 double alpha_floor = kAlphaFloor);

    /// One controller step: push the newest measured tracking error (paired
    /// with the alpha*delta_u that was held since the previous step), then
    /// estimate the disturbance and compute the correction. During warm-up,
    /// and whenever |alpha| < alpha_floor, the correction is zero. With
    /// hold = true the estimator keeps running but the correction is pinned
    /// to zero (open-loop comparison runs).
    IpDecision update(double delta_theta_measured, double alpha, bool hold = false);

    double gain() const { return kp_; }
    double alpha_floor() const { return alpha_floor_; }
    const EstimatorWindow& window() const { return window_; }

private:
    double kp_;
    double alpha_floor_;
    double pending_alpha_delta_u_ = 0.0;
    EstimatorWindow window_;
};

} // namespace kuramoto

#include "kuramoto/heol.hpp"

#include <cmath>

namespace kuramoto {

double homeostat_gain(std::size_t i, std::span<const double> theta_star,
                      const NetworkModel& model) {
    if (model.mode == ControlMode::additive) return 1.0;
    return model.coupling / static_cast<double>(model.n) *
           coupling_sum(i, theta_star, model);
}

void homeostat_gains_into(const ReferenceSample& ref, const NetworkModel& model,
                          std::span<double> out) {
    if (model.mode == ControlMode::additive) {
        for (std::size_t i = 0; i < model.n; ++i) out[i] = 1.0;
        return;
    }
    const double k_over_n = model.coupling / static_cast<double>(model.n);
    for (std::size_t i = 0; i < model.n; ++i) {
        out[i] = k_over_n * ref.coupling[i];
    }
}

EstimatorWindow::EstimatorWindow(double horizon, double period)
    : horizon_(horizon), period_(period) {
    if (!(horizon > 0.0) || !(period > 0.0)) {
        throw ConfigError("estimator window horizon and period must be positive");
    }
    const double ratio = horizon / period;
    const auto intervals = static_cast<std::size_t>(std::llround(ratio));
    if (intervals == 0 || std::abs(ratio - static_cast<double>(intervals)) > 1e-9 * ratio) {
        throw ConfigError("window horizon must be an integer multiple of the sampling period");
    }
    capacity_ = intervals + 1;
    delta_theta_.assign(capacity_, 0.0);
    alpha_delta_u_.assign(capacity_, 0.0);

    // Quadrature weights over sigma_k = k * h, k = 0..M, h = T/M.
    const double T = horizon_;
    const double h = T / static_cast<double>(intervals);
    theta_weights_.resize(capacity_);
    control_weights_.resize(capacity_);
    for (std::size_t k = 0; k <= intervals; ++k) {
        const double s = static_cast<double>(k) * h;
        theta_weights_[k] = h * (T - 2.0 * s);
    }
    theta_weights_[0] = T * h / 2.0 - h * h / 3.0;
    theta_weights_[intervals] = -T * h / 2.0 + h * h / 3.0;
    control_weights_[0] = 0.0;  // first sample's held control predates the window
    for (std::size_t k = 1; k <= intervals; ++k) {
        const double s1 = static_cast<double>(k - 1) * h;
        const double s2 = static_cast<double>(k) * h;
        control_weights_[k] = T * (s2 * s2 - s1 * s1) / 2.0 - (s2 * s2 * s2 - s1 * s1 * s1) / 3.0;
    }
}

void EstimatorWindow::push(double delta_theta, double alpha_delta_u) {
    if (count_ < capacity_) {
        const std::size_t pos = (head_ + count_) % capacity_;
        delta_theta_[pos] = delta_theta;
        alpha_delta_u_[pos] = alpha_delta_u;
        ++count_;
    } else {
        delta_theta_[head_] = delta_theta;
        alpha_delta_u_[head_] = alpha_delta_u;
        head_ = (head_ + 1) % capacity_;
    }
}

std::optional<double> EstimatorWindow::estimate() const {
    if (!full()) return std::nullopt;
    double acc = 0.0;
    for (std::size_t k = 0; k < capacity_; ++k) {
        const std::size_t pos = (head_ + k) % capacity_;
        acc += theta_weights_[k] * delta_theta_[pos] + control_weights_[k] * alpha_delta_u_[pos];
    }
    const double T = horizon_;
    return -6.0 / (T * T * T) * acc;
}

void EstimatorWindow::clear() {
    head_ = 0;
    count_ = 0;
}

double ip_law(double f_est, double kp, double delta_theta, double alpha) {
    return -(f_est + kp * delta_theta) / alpha;
}

IpController::IpController(double kp, double window_horizon, double period, double alpha_floor)
    : kp_(kp), alpha_floor_(alpha_floor), window_(window_horizon, period) {
    if (!(kp > 0.0)) {
        throw ConfigError("proportional gain must be positive, got " + std::to_string(kp));
    }
}

IpDecision IpController::update(double delta_theta_measured, double alpha, bool hold) {
    window_.push(delta_theta_measured, pending_alpha_delta_u_);
    IpDecision d;
    const std::optional<double> f_est = window_.estimate();
    if (!f_est) {
        d.warmup = true;
    } else {
        d.disturbance_estimate = *f_est;
        if (std::abs(alpha) < alpha_floor_) {
            d.guard = true;
        } else if (!hold) {
            d.delta_u = ip_law(*f_est, kp_, delta_theta_measured, alpha);
        }
    }
    pending_alpha_delta_u_ = alpha * d.delta_u;
    return d;
}

} // namespace kuramoto

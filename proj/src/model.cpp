#include "kuramoto/model.hpp"

#include <cmath>
#include <cstdint>

namespace kuramoto {

void NetworkModel::validate() const {
    if (n < 2) {
        throw ConfigError("network needs at least 2 oscillators, got " + std::to_string(n));
    }
    if (omega.size() != n) {
        throw ConfigError("omega has " + std::to_string(omega.size()) +
                          " entries, expected " + std::to_string(n));
    }
    if (adjacency.size() != n * n) {
        throw ConfigError("adjacency has " + std::to_string(adjacency.size()) +
                          " entries, expected " + std::to_string(n * n));
    }
    for (double w : omega) {
        if (!std::isfinite(w)) throw ConfigError("omega entries must be finite");
    }
    if (!std::isfinite(coupling)) throw ConfigError("coupling strength must be finite");
    for (std::size_t i = 0; i < n; ++i) {
        bool has_neighbor = false;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = a(i, j);
            if (!std::isfinite(v) || v < 0.0) {
                throw ConfigError("adjacency entries must be finite and non-negative (row " +
                                  std::to_string(i + 1) + ")");
            }
            if (j != i && v > 0.0) has_neighbor = true;
        }
        if (!has_neighbor) {
            throw ConfigError("oscillator " + std::to_string(i + 1) +
                              " has no positive off-diagonal adjacency entry");
        }
    }
}

NetworkModel NetworkModel::complete(std::size_t n, std::vector<double> omega,
                                    double coupling, ControlMode mode) {
    NetworkModel m;
    m.n = n;
    m.omega = std::move(omega);
    m.coupling = coupling;
    m.mode = mode;
    m.adjacency.assign(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) m.adjacency[i * n + i] = 0.0;
    m.validate();
    return m;
}

UncertaintySet UncertaintySet::identity(std::size_t n) {
    UncertaintySet u;
    u.freq_scale.assign(n, 1.0);
    u.coupling_scale = 1.0;
    u.init_scale.assign(n, 1.0);
    return u;
}

bool UncertaintySet::is_identity() const {
    if (coupling_scale != 1.0) return false;
    for (double v : freq_scale)
        if (v != 1.0) return false;
    for (double v : init_scale)
        if (v != 1.0) return false;
    return true;
}

void UncertaintySet::validate(std::size_t n) const {
    if (freq_scale.size() != n || init_scale.size() != n) {
        throw ConfigError("uncertainty vectors must have one entry per oscillator");
    }
    auto check = [](double v, const char* what) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw ConfigError(std::string(what) + " multipliers must be finite and > 0");
        }
    };
    for (double v : freq_scale) check(v, "freq_scale");
    check(coupling_scale, "coupling_scale");
    for (double v : init_scale) check(v, "init_scale");
}

double coupling_sum(std::size_t i, std::span<const double> phases, const NetworkModel& model) {
    if (i >= model.n) {
        throw ConfigError("oscillator index " + std::to_string(i) + " out of range");
    }
    const double* row = model.adjacency.data() + i * model.n;
    const double ti = phases[i];
    double sum = 0.0;
    for (std::size_t j = 0; j < model.n; ++j) {
        if (j == i) continue;
        sum += row[j] * std::sin(phases[j] - ti);
    }
    return sum;
}

void coupling_sums_serial(std::span<const double> phases, const NetworkModel& model,
                          std::span<double> out) {
    for (std::size_t i = 0; i < model.n; ++i) {
        out[i] = coupling_sum(i, phases, model);
    }
}

void coupling_sums_parallel(std::span<const double> phases, const NetworkModel& model,
                            std::span<double> out) {
#ifdef _OPENMP
    const std::int64_t n = static_cast<std::int64_t>(model.n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        out[i] = coupling_sum(static_cast<std::size_t>(i), phases, model);
    }
#else
    coupling_sums_serial(phases, model, out);
#endif
}

void coupling_sums(std::span<const double> phases, const NetworkModel& model,
                   std::span<double> out) {
    if (model.n >= kParallelThreshold) {
        coupling_sums_parallel(phases, model, out);
    } else {
        coupling_sums_serial(phases, model, out);
    }
}

void plant_rhs_into(std::span<const double> phases, std::span<const double> controls,
                    const NetworkModel& model, const UncertaintySet& unc,
                    std::span<double> sums, std::span<double> out) {
    coupling_sums(phases, model, sums);
    const double gain = model.coupling * unc.coupling_scale / static_cast<double>(model.n);
    if (model.mode == ControlMode::multiplicative) {
        for (std::size_t i = 0; i < model.n; ++i) {
            out[i] = model.omega[i] * unc.freq_scale[i] + controls[i] * gain * sums[i];
        }
    } else {
        for (std::size_t i = 0; i < model.n; ++i) {
            out[i] = model.omega[i] * unc.freq_scale[i] + gain * sums[i] + controls[i];
        }
    }
}

std::vector<double> plant_rhs(std::span<const double> phases, std::span<const double> controls,
                              const NetworkModel& model, const UncertaintySet& unc) {
    std::vector<double> sums(model.n);
    std::vector<double> out(model.n);
    plant_rhs_into(phases, controls, model, unc, sums, out);
    return out;
}

} // namespace kuramoto

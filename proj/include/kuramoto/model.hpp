#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kuramoto/errors.hpp"

namespace kuramoto {

/// Whether the control variable scales the coupling term or adds to the rate.
enum class ControlMode { multiplicative, additive };

/// Network of N coupled phase oscillators.
///
/// Multiplicative mode:  thetadot_i = omega_i + u_i * (K/N) * S_i(theta)
/// Additive mode:        thetadot_i = omega_i + (K/N) * S_i(theta) + u_i
/// with S_i(theta) = sum_j a_ij * sin(theta_j - theta_i).
///
/// Diagonal adjacency entries are stored but never read (sin(0) = 0 anyway).
/// Oscillator indices are 0-based throughout the library; scenario files and
/// diagnostics use 1-based labels.
struct NetworkModel {
    std::size_t n = 0;
    std::vector<double> omega;      ///< natural angular frequencies, rad/s
    double coupling = 1.0;          ///< coupling strength K
    std::vector<double> adjacency;  ///< n*n row-major, entries >= 0
    ControlMode mode = ControlMode::multiplicative;

    double a(std::size_t i, std::size_t j) const { return adjacency[i * n + j]; }

    /// Throws ConfigError on any invariant breach: n >= 2, finite non-negative
    /// adjacency, and at least one strictly positive off-diagonal entry per row
    /// (a row of zeros leaves that oscillator uncontrollable in multiplicative
    /// mode).
    void validate() const;

    static NetworkModel complete(std::size_t n, std::vector<double> omega,
                                 double coupling, ControlMode mode);
};

/// Multiplicative mismatch between the true plant and the nominal model the
/// controller assumes. The identity set reproduces the nominal plant exactly
/// (same code path, multiplications by 1.0).
struct UncertaintySet {
    std::vector<double> freq_scale;   ///< per-oscillator multipliers on omega_i
    double coupling_scale = 1.0;      ///< multiplier on K
    std::vector<double> init_scale;   ///< multipliers on the nominal initial phases

    static UncertaintySet identity(std::size_t n);

    bool is_identity() const;

    /// Throws ConfigError unless every multiplier is finite and > 0.
    void validate(std::size_t n) const;
};

/// S_i(theta) = sum_{j != i} a_ij * sin(theta_j - theta_i) for one row.
double coupling_sum(std::size_t i, std::span<const double> phases, const NetworkModel& model);

/// All row sums, sequentially. Reference implementation.
void coupling_sums_serial(std::span<const double> phases, const NetworkModel& model,
                          std::span<double> out);

/// All row sums with the rows distributed across OpenMP threads. Each row is
/// accumulated in index order by a single thread, so the result is
/// bit-identical to the serial version for any thread count.
void coupling_sums_parallel(std::span<const double> phases, const NetworkModel& model,
                            std::span<double> out);

/// Rows below this size are not worth forking threads for.
inline constexpr std::size_t kParallelThreshold = 256;

/// Serial below kParallelThreshold, parallel above (when compiled with OpenMP).
void coupling_sums(std::span<const double> phases, const NetworkModel& model,
                   std::span<double> out);

/// True plant right-hand side, with the uncertainty multipliers applied.
/// `sums` is scratch of size n for the coupling row sums.
void plant_rhs_into(std::span<const double> phases, std::span<const double> controls,
                    const NetworkModel& model, const UncertaintySet& unc,
                    std::span<double> sums, std::span<double> out);

std::vector<double> plant_rhs(std::span<const double> phases, std::span<const double> controls,
                              const NetworkModel& model, const UncertaintySet& unc);

} // namespace kuramoto

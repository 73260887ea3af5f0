#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "kuramoto/sim.hpp"

namespace kuramoto {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Column layout: t, then per-signal blocks of n columns in the order
/// theta, theta_star, thetadot, thetadot_star, u, u_star, delta_theta, f_est,
/// each suffixed _1.._N.
std::string csv_header(std::size_t n);

void write_trace_csv(const SimulationTrace& trace, std::ostream& out);
void write_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path);
std::string trace_to_csv(const SimulationTrace& trace);

/// Parses a trace written by write_trace_csv. Events are not part of the CSV.
/// Throws ParseError on shape or header mismatches.
SimulationTrace read_trace_csv(std::istream& in, const std::string& source_name);
SimulationTrace read_trace_csv(const std::filesystem::path& path);

void write_metrics(const SyncMetrics& m, double t_f, std::size_t alpha_guard_events,
                   std::size_t warmup_events, std::ostream& out);
void write_metrics(const SyncMetrics& m, double t_f, std::size_t alpha_guard_events,
                   std::size_t warmup_events, const std::filesystem::path& path);

} // namespace kuramoto

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kuramoto/sim.hpp"

namespace kuramoto {

/// Names accepted by preset().
std::vector<std::string> preset_names();

/// Built-in three-oscillator experiments.
///
/// paper-multiplicative: N=3, omega=(5,7,8), K=1, complete graph,
/// multiplicative control, mismatch multipliers (1.2,0.8,1.2 | 0.8 | 0.8,1.2,0.8),
/// offsets (pi/2, pi/2, pi), f(t) = 2 sin(0.5 t) + 7.5 t + 7, tau = 1 s,
/// T_e = 0.01 s, measurement noise sigma = 0.1 rad, K_P = 1, 40 s horizon.
/// The reference plan starts from the nominal phases (0.5, 1, 2); the true
/// plant starts from their init_scale-perturbed values (0.4, 1.2, 1.6).
///
/// paper-additive: identical except additive control and offsets all pi/2.
///
/// Throws UsageError for unknown names.
SimulationConfig preset(std::string_view name);

/// Parsed scenario file: the simulation config plus any [output] settings.
struct Scenario {
    SimulationConfig config;
    std::optional<std::string> output_directory;
};

/// Parse scenario text. `source_name` is used in error messages.
/// Throws ParseError (with 1-based line numbers) on malformed input and on
/// unknown sections or keys; ConfigError on semantically invalid values.
Scenario parse_scenario(std::string_view text, const std::string& source_name);

/// Load and parse a scenario file. A missing or unreadable file is a ParseError.
Scenario load_scenario(const std::filesystem::path& path);

/// Arithmetic over numbers and `pi` with + - * / and parentheses ("pi/2",
/// "2*pi", "-(pi/4)+1"). Throws ParseError on malformed expressions.
double eval_number(std::string_view expr);

} // namespace kuramoto

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace kuramoto::cli {

/// Stable exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       ///< bad flags, unknown preset, parse errors
inline constexpr int kExitValidation = 3;  ///< plan validation refused the run
inline constexpr int kExitDiverged = 4;    ///< simulation blew up or hit a singularity

struct RunOptions {
    std::optional<std::string> preset_name;
    std::optional<std::string> scenario_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    bool no_noise = false;
    bool open_loop = false;
    bool force = false;
};

struct ValidateOptions {
    std::optional<std::string> preset_name;
    std::optional<std::string> scenario_path;
    std::optional<double> horizon;  ///< defaults to the scenario horizon
};

/// Runs a simulation and writes trace.csv, metrics.txt, and the four figure
/// SVGs (controls, outputs, output-derivatives, tracking-errors) into the
/// output directory. Diagnostics go to `err`, a summary to `out`.
int run_command(const RunOptions& options, std::ostream& out, std::ostream& err);

/// Prints the plan validation report; exit 0 when no hard violations exist.
int validate_command(const ValidateOptions& options, std::ostream& out, std::ostream& err);

} // namespace kuramoto::cli

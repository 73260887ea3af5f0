// Command-line front end: run simulations from presets or scenario files,
// validate reference plans, write CSV traces, metrics, and SVG figures.

#include <iostream>

#include <CLI11.hpp>

#include "kuramoto/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Kuramoto oscillator synchronization via flatness-based HEOL control"};
    app.require_subcommand(1);

    kuramoto::cli::RunOptions run_opts;
    std::string run_preset, run_scenario, run_out;
    std::uint64_t run_seed = 0;
    auto* run_cmd = app.add_subcommand("run", "simulate and write trace/metrics/figures");
    auto* preset_opt = run_cmd->add_option("--preset", run_preset, "built-in scenario name");
    auto* scenario_opt =
        run_cmd->add_option("--scenario", run_scenario, "path to a scenario file");
    run_cmd->add_option("--out", run_out, "output directory");
    auto* seed_opt = run_cmd->add_option("--seed", run_seed, "override the RNG seed");
    run_cmd->add_flag("--no-noise", run_opts.no_noise, "disable measurement noise");
    run_cmd->add_flag("--open-loop", run_opts.open_loop,
                      "hold the closed-loop correction at zero");
    run_cmd->add_flag("--force", run_opts.force, "run even if plan validation fails");
    preset_opt->excludes(scenario_opt);

    kuramoto::cli::ValidateOptions val_opts;
    std::string val_preset, val_scenario;
    double val_horizon = 0.0;
    auto* val_cmd = app.add_subcommand("validate", "check a reference plan for singularities");
    auto* vpreset_opt = val_cmd->add_option("--preset", val_preset, "built-in scenario name");
    auto* vscenario_opt =
        val_cmd->add_option("--scenario", val_scenario, "path to a scenario file");
    auto* vhorizon_opt =
        val_cmd->add_option("--horizon", val_horizon, "sampling horizon in seconds");
    vpreset_opt->excludes(vscenario_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kuramoto::cli::kExitUsage;
    }

    if (run_cmd->parsed()) {
        if (preset_opt->count()) run_opts.preset_name = run_preset;
        if (scenario_opt->count()) run_opts.scenario_path = run_scenario;
        if (!run_out.empty()) run_opts.out_dir = run_out;
        if (seed_opt->count()) run_opts.seed = run_seed;
        return kuramoto::cli::run_command(run_opts, std::cout, std::cerr);
    }
    if (vpreset_opt->count()) val_opts.preset_name = val_preset;
    if (vscenario_opt->count()) val_opts.scenario_path = val_scenario;
    if (vhorizon_opt->count()) val_opts.horizon = val_horizon;
    return kuramoto::cli::validate_command(val_opts, std::cout, std::cerr);
}

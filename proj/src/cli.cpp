#include "kuramoto/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <ostream>
#include <vector>

#include "kuramoto/scenario.hpp"
#include "kuramoto/svg_plot.hpp"
#include "kuramoto/trace_io.hpp"

namespace kuramoto::cli {

namespace {

namespace fs = std::filesystem;

struct LoadedConfig {
    SimulationConfig config;
    std::optional<std::string> output_directory;
};

LoadedConfig load(const std::optional<std::string>& preset_name,
                  const std::optional<std::string>& scenario_path) {
    if (preset_name.has_value() == scenario_path.has_value()) {
        throw UsageError("exactly one of --preset or --scenario is required");
    }
    if (preset_name) {
        return {preset(*preset_name), std::nullopt};
    }
    Scenario s = load_scenario(*scenario_path);
    return {std::move(s.config), std::move(s.output_directory)};
}

void print_report(const ValidationReport& report, std::ostream& out) {
    for (const auto& v : report.violations) out << "violation: " << v.describe() << '\n';
    for (const auto& w : report.warnings) out << "warning:   " << w.describe() << '\n';
    out << report.violations.size() << " violation(s), " << report.warnings.size()
        << " warning(s)\n";
}

std::vector<double> column(const SimulationTrace& trace, const std::vector<double>& series,
                           std::size_t i, std::size_t stride) {
    std::vector<double> out;
    out.reserve(trace.rows() / stride + 1);
    for (std::size_t row = 0; row < trace.rows(); row += stride) {
        out.push_back(series[row * trace.n + i]);
    }
    return out;
}

void write_figures(const SimulationTrace& trace, const fs::path& dir) {
    // Keep the polylines readable: cap each series around 2000 points.
    const std::size_t stride = std::max<std::size_t>(1, trace.rows() / 2000);
    std::vector<double> t;
    for (std::size_t row = 0; row < trace.rows(); row += stride) {
        t.push_back(trace.times[row]);
    }

    struct Group {
        const char* file;
        const char* title;
        const std::vector<double>* actual;
        const std::vector<double>* reference;  // nullptr for single-series panels
        const char* actual_label;
        const char* ref_label;
    };
    const Group groups[] = {
        {"controls.svg", "Control inputs", &trace.u, &trace.u_star, "u_%zu", "u*_%zu"},
        {"outputs.svg", "Outputs", &trace.theta, &trace.theta_star, "theta_%zu", "theta*_%zu"},
        {"output-derivatives.svg", "Time derivative outputs", &trace.thetadot,
         &trace.thetadot_star, "thetadot_%zu", "thetadot*_%zu"},
        {"tracking-errors.svg", "Tracking errors", &trace.delta_theta, nullptr,
         "delta_theta_%zu", ""},
    };
    for (const auto& g : groups) {
        std::vector<SvgPanel> panels(trace.n);
        for (std::size_t i = 0; i < trace.n; ++i) {
            char label[48];
            std::snprintf(label, sizeof label, g.actual_label, i + 1);
            panels[i].title = label;
            panels[i].series.push_back({label, "#1f4fd8", false, t,
                                        column(trace, *g.actual, i, stride)});
            if (g.reference) {
                std::snprintf(label, sizeof label, g.ref_label, i + 1);
                panels[i].series.push_back({label, "#d82f2f", true, t,
                                            column(trace, *g.reference, i, stride)});
            }
        }
        write_svg_chart(dir / g.file, g.title, panels);
    }
}

} // namespace

int run_command(const RunOptions& options, std::ostream& out, std::ostream& err) {
    try {
        LoadedConfig loaded = load(options.preset_name, options.scenario_path);
        SimulationConfig& config = loaded.config;
        if (options.seed) config.rng_seed = *options.seed;
        if (options.no_noise) config.noise_std = 0.0;
        config.open_loop = options.open_loop;
        config.force_run = options.force;

        std::optional<std::string> out_dir = options.out_dir;
        if (!out_dir) out_dir = loaded.output_directory;
        if (!out_dir) throw UsageError("no output directory: pass --out or set [output] directory");

        const SimulationTrace trace = run(config);

        double t_f = std::numeric_limits<double>::quiet_NaN();
        try {
            t_f = settle_time(config.plan);
        } catch (const ConfigError& e) {
            err << "warning: " << e.what() << "; tail metrics are undefined\n";
        }
        SyncMetrics m;
        if (std::isfinite(t_f) && t_f < trace.times.back()) {
            m = metrics(trace, t_f);
        } else {
            if (std::isfinite(t_f)) {
                err << "warning: run ends at " << trace.times.back()
                    << " s, before the settling time " << t_f
                    << " s; tail metrics are undefined\n";
            }
            const double nan = std::numeric_limits<double>::quiet_NaN();
            m.sync_error = nan;
            m.rms_delta_theta.assign(trace.n, nan);
            m.max_abs_delta_theta.assign(trace.n, nan);
            m.rms_delta_theta_overall = nan;
            m.max_abs_delta_theta_overall = nan;
        }

        const fs::path dir(*out_dir);
        fs::create_directories(dir);
        write_trace_csv(trace, dir / "trace.csv");
        const std::size_t guards = trace.count_events(EventKind::alpha_guard);
        const std::size_t warmups = trace.count_events(EventKind::estimator_warmup);
        write_metrics(m, t_f, guards, warmups, dir / "metrics.txt");
        write_figures(trace, dir);

        out << "wrote " << (dir / "trace.csv").string() << " (" << trace.rows() << " rows), "
            << "metrics.txt, 4 figures\n";
        write_metrics(m, t_f, guards, warmups, out);
        return kExitOk;
    } catch (const RefusedRunError& e) {
        err << "error: " << e.what() << "\n";
        print_report(e.report(), err);
        err << "rerun with --force to simulate anyway\n";
        return kExitValidation;
    } catch (const ParseError& e) {
        err << "error";
        if (e.line() > 0) err << " (line " << e.line() << ", column " << e.column() << ")";
        err << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDiverged;
    } catch (const SingularityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDiverged;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int validate_command(const ValidateOptions& options, std::ostream& out, std::ostream& err) {
    try {
        LoadedConfig loaded = load(options.preset_name, options.scenario_path);
        const SimulationConfig& config = loaded.config;
        const double horizon = options.horizon.value_or(config.horizon);
        const ValidationReport report =
            validate_plan(config.plan, config.model, horizon, config.sampling_period);
        print_report(report, out);
        return report.ok() ? kExitOk : kExitValidation;
    } catch (const ParseError& e) {
        err << "error";
        if (e.line() > 0) err << " (line " << e.line() << ", column " << e.column() << ")";
        err << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace kuramoto::cli

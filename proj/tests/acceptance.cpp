// Acceptance suite: end-to-end checks of the synchronization pipeline, one
// line per criterion. Exits nonzero if any criterion fails.
//
// `acceptance --dump` prints the regression values that acceptance_baselines.hpp
// freezes.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>

#include "kuramoto/scenario.hpp"
#include "kuramoto/sim.hpp"
#include "kuramoto/trace_io.hpp"

#include "acceptance_baselines.hpp"

using namespace kuramoto;

namespace {

int g_failures = 0;

void report(int criterion, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, name,
                detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

struct TailStats {
    SyncMetrics metrics;
    double rate_min = 0.0;
    double rate_max = 0.0;
    std::size_t guard_events = 0;
};

TailStats tail_stats(const SimulationTrace& trace, double t_f) {
    TailStats s;
    s.metrics = metrics(trace, t_f);
    s.guard_events = trace.count_events(EventKind::alpha_guard);
    bool first = true;
    for (std::size_t row = 0; row < trace.rows(); ++row) {
        if (trace.times[row] < t_f - 1e-9) continue;
        for (std::size_t i = 0; i < trace.n; ++i) {
            const double r = trace.at(trace.thetadot, row, i);
            if (first) {
                s.rate_min = s.rate_max = r;
                first = false;
            }
            s.rate_min = std::min(s.rate_min, r);
            s.rate_max = std::max(s.rate_max, r);
        }
    }
    return s;
}

// --- criterion 1: flat exactness ------------------------------------------

void criterion_flat_exactness() {
    bool pass = true;
    std::string detail;
    for (const char* name : {"paper-multiplicative", "paper-additive"}) {
        const auto start = std::chrono::steady_clock::now();
        const SimulationConfig cfg = preset(name);
        const double err = flat_open_loop_error(cfg.plan, cfg.model,
                                                UncertaintySet::identity(cfg.model.n),
                                                10.0, 1e-3);
        const double elapsed = seconds_since(start);
        pass = pass && err < 1e-5 && elapsed < 1.0;
        if (!detail.empty()) detail += ", ";
        detail += fmt("%s err %.2e in %.2fs", cfg.model.mode == ControlMode::multiplicative
                                                  ? "mult" : "add",
                      err, elapsed);
    }
    report(1, "flat exactness of the open-loop inversion", pass, detail);
}

// --- criterion 2: reference filter residual --------------------------------

void criterion_filter_residual() {
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> par(-10.0, 10.0);
    std::uniform_real_distribution<double> tau_dist(0.1, 5.0);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const double c = par(gen), g0 = par(gen), gd0 = par(gen);
        const double tau = tau_dist(gen);
        const double t = frac(gen) * 10.0 * tau;
        const OffsetState s = solve_offset(c, g0, gd0, tau, t);
        worst = std::max(worst,
                         std::abs(tau * tau * s.accel + 2.0 * tau * s.rate + s.value - c));
    }
    report(2, "settling filter residual over 1000 random samples", worst < 1e-9,
           fmt("max residual %.2e", worst));
}

// --- criterion 3: settling contract ----------------------------------------

void criterion_settling() {
    bool pass = true;
    std::string detail;
    for (const char* name : {"paper-multiplicative", "paper-additive"}) {
        const SimulationConfig cfg = preset(name);
        const double t_f = settle_time(cfg.plan);
        double worst = 0.0;
        for (std::size_t i = 0; i < cfg.plan.size(); ++i) {
            const double c = cfg.plan.offsets[i];
            if (c == 0.0) continue;
            const OffsetState g = solve_offset(c, cfg.plan.offset_init[i],
                                               cfg.plan.offset_rate_init[i], cfg.plan.tau, t_f);
            worst = std::max(worst, std::abs(g.value - c) / std::abs(c));
        }
        pass = pass && worst <= 1e-3;
        if (!detail.empty()) detail += ", ";
        detail += fmt("t_f %.1fs rel err %.2e", t_f, worst);
    }
    report(3, "offsets settled to 0.1% at t_f", pass, detail);
}

// --- criterion 4: estimator oracle ------------------------------------------

void criterion_estimator() {
    const double T = 0.3, Te = 0.01;

    EstimatorWindow ramp(T, Te);
    for (int k = 0; k <= 30; ++k) ramp.push(k * Te, 0.0);
    const double slope = ramp.estimate().value();

    // constant disturbance, bounded random held corrections, exact integration
    std::mt19937_64 gen(55);
    std::uniform_real_distribution<double> du(-1.0, 1.0);
    const double F = 2.5;
    EstimatorWindow window(T, Te);
    double dtheta = -0.7;
    window.push(dtheta, 0.0);
    double worst = 0.0;
    int estimates = 0;
    for (int k = 0; k < 120; ++k) {
        const double held = du(gen);
        dtheta += Te * (F + held);
        window.push(dtheta, held);
        if (auto est = window.estimate()) {
            worst = std::max(worst, std::abs(*est - F));
            ++estimates;
        }
    }

    const bool pass = std::abs(slope - 1.0) <= 1e-6 && estimates > 0 && worst <= 1e-2;
    report(4, "disturbance estimator oracle", pass,
           fmt("ramp slope %.9f, const-F worst err %.2e over %d estimates", slope, worst,
               estimates));
}

// --- criterion 5: homeostat decay -------------------------------------------

void criterion_decay() {
    const double F = 2.5, kp = 1.0, x0 = 1.0;
    auto alpha_of = [](double t) { return 0.8 + 0.15 * std::sin(t); };
    auto rhs = [&](double t, double x) {
        const double a = alpha_of(t);
        return F + a * ip_law(F, kp, x, a);
    };
    double x = x0;
    const double h = 1e-3;
    double worst = 0.0;
    for (int k = 0; k < 5000; ++k) {
        const double t = k * h;
        const double k1 = rhs(t, x);
        const double k2 = rhs(t + h / 2, x + h / 2 * k1);
        const double k3 = rhs(t + h / 2, x + h / 2 * k2);
        const double k4 = rhs(t + h, x + h * k3);
        x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        worst = std::max(worst, std::abs(x - x0 * std::exp(-kp * (t + h))));
    }
    report(5, "perfect-estimate loop decays like exp(-Kp t)", worst < 1e-6,
           fmt("max deviation %.2e over 5 s", worst));
}

// --- criteria 6 and 8: frozen regression baselines --------------------------

void criterion_multiplicative_regression(const TailStats& mult, double elapsed) {
    if (!baselines::kFrozen) {
        report(6, "multiplicative experiment matches its frozen baseline", false,
               "baselines not frozen yet; run acceptance --dump");
        return;
    }
    bool pass = mult.guard_events == 0;
    pass = pass && elapsed < 5.0;
    pass = pass && std::abs(mult.metrics.sync_error - baselines::kMultSyncError) <= 1e-12;
    for (int i = 0; i < 3; ++i) {
        pass = pass && std::abs(mult.metrics.rms_delta_theta[i] - baselines::kMultRms[i]) <= 1e-12;
    }
    const double lo = 6.5 - baselines::kMultRateMargin;
    const double hi = 8.5 + baselines::kMultRateMargin;
    pass = pass && mult.rate_min >= lo - 1e-12 && mult.rate_max <= hi + 1e-12;
    report(6, "multiplicative experiment matches its frozen baseline", pass,
           fmt("guards %zu, sync %.6g, rates [%.3f, %.3f] within [%.3f, %.3f], %.2fs",
               mult.guard_events, mult.metrics.sync_error, mult.rate_min, mult.rate_max, lo, hi,
               elapsed));
}

void criterion_additive_regression(const TailStats& add, const TailStats& mult) {
    if (!baselines::kFrozen) {
        report(8, "additive experiment matches its frozen baseline", false,
               "baselines not frozen yet; run acceptance --dump");
        return;
    }
    bool pass = std::abs(add.metrics.sync_error - baselines::kAddSyncError) <= 1e-12;
    for (int i = 0; i < 3; ++i) {
        pass = pass && std::abs(add.metrics.rms_delta_theta[i] - baselines::kAddRms[i]) <= 1e-12;
    }
    // the additive loop tracks at least as tightly as the multiplicative one
    pass = pass && add.metrics.rms_delta_theta_overall < mult.metrics.rms_delta_theta_overall;
    report(8, "additive experiment matches its frozen baseline", pass,
           fmt("rms %.6g vs multiplicative %.6g", add.metrics.rms_delta_theta_overall,
               mult.metrics.rms_delta_theta_overall));
}

// --- criterion 7: closed loop beats open loop --------------------------------

void criterion_robustness() {
    SimulationConfig closed = preset("paper-multiplicative");
    closed.noise_std = 0.0;
    SimulationConfig open = closed;
    open.open_loop = true;
    const double t_f = settle_time(closed.plan);
    const SyncMetrics m_closed = metrics(run(closed), t_f);
    const SyncMetrics m_open = metrics(run(open), t_f);
    const double ratio = m_open.rms_delta_theta_overall / m_closed.rms_delta_theta_overall;
    report(7, "closed loop at least 5x tighter than open loop under mismatch", ratio >= 5.0,
           fmt("closed rms %.4g, open rms %.4g, ratio %.0fx",
               m_closed.rms_delta_theta_overall, m_open.rms_delta_theta_overall, ratio));
}

// --- criterion 9: singularity detection --------------------------------------

void criterion_singularity_detection() {
    SimulationConfig mult = preset("paper-multiplicative");
    mult.plan.offsets = {0.0, 0.0, 0.0};
    bool refused = false;
    bool condition1 = false;
    try {
        (void)run(mult);
    } catch (const RefusedRunError& e) {
        refused = true;
        for (const auto& v : e.report().violations) {
            if (v.condition == 1) condition1 = true;
        }
    }

    SimulationConfig add = preset("paper-additive");
    add.plan.offsets = {0.0, 0.0, 0.0};
    const ValidationReport add_report =
        validate_plan(add.plan, add.model, add.horizon, add.sampling_period);

    const bool pass = refused && condition1 && add_report.ok();
    report(9, "equal offsets refused in multiplicative mode, fine in additive", pass,
           fmt("refused %s with condition-1 %s, additive ok %s", refused ? "yes" : "no",
               condition1 ? "yes" : "no", add_report.ok() ? "yes" : "no"));
}

// --- criterion 10: determinism -----------------------------------------------

void criterion_determinism() {
    const SimulationConfig cfg = preset("paper-multiplicative");
    const std::string a = trace_to_csv(run(cfg));
    const std::string b = trace_to_csv(run(cfg));
    report(10, "identical config and seed give byte-identical trace.csv", a == b,
           fmt("%zu bytes%s", a.size(), a == b ? ", equal" : ", DIFFER"));
}

void dump_baselines() {
    for (const char* name : {"paper-multiplicative", "paper-additive"}) {
        const SimulationConfig cfg = preset(name);
        const SimulationTrace trace = run(cfg);
        const TailStats s = tail_stats(trace, settle_time(cfg.plan));
        std::printf("%s:\n", name);
        std::printf("  sync_error   = %s\n", format_double(s.metrics.sync_error).c_str());
        for (int i = 0; i < 3; ++i) {
            std::printf("  rms[%d]       = %s\n", i,
                        format_double(s.metrics.rms_delta_theta[i]).c_str());
        }
        std::printf("  rms_overall  = %s\n",
                    format_double(s.metrics.rms_delta_theta_overall).c_str());
        std::printf("  rate range   = [%s, %s]\n", format_double(s.rate_min).c_str(),
                    format_double(s.rate_max).c_str());
        const double margin = std::max({6.5 - s.rate_min, s.rate_max - 8.5, 0.0});
        std::printf("  rate margin  = %s\n", format_double(margin).c_str());
        std::printf("  guard events = %zu\n", s.guard_events);
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1 && std::strcmp(argv[1], "--dump") == 0) {
        dump_baselines();
        return 0;
    }

    try {
        criterion_flat_exactness();
        criterion_filter_residual();
        criterion_settling();
        criterion_estimator();
        criterion_decay();

        const auto start = std::chrono::steady_clock::now();
        const SimulationConfig mult_cfg = preset("paper-multiplicative");
        const SimulationTrace mult_trace = run(mult_cfg);
        const double mult_elapsed = seconds_since(start);
        const TailStats mult = tail_stats(mult_trace, settle_time(mult_cfg.plan));
        criterion_multiplicative_regression(mult, mult_elapsed);

        criterion_robustness();

        const SimulationConfig add_cfg = preset("paper-additive");
        const TailStats add = tail_stats(run(add_cfg), settle_time(add_cfg.plan));
        criterion_additive_regression(add, mult);

        criterion_singularity_detection();
        criterion_determinism();
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance aborted: %s\n", e.what());
        return 1;
    }

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}

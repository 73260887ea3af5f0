#include "kuramoto/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace kuramoto {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

const char* const kSignalNames[] = {"theta",   "theta_star", "thetadot", "thetadot_star",
                                    "u",       "u_star",     "delta_theta", "f_est"};

std::vector<double>* signal_series(SimulationTrace& t, std::size_t s) {
    std::vector<double>* all[] = {&t.theta, &t.theta_star, &t.thetadot, &t.thetadot_star,
                                  &t.u,     &t.u_star,     &t.delta_theta, &t.f_est};
    return all[s];
}

const std::vector<double>* signal_series(const SimulationTrace& t, std::size_t s) {
    return signal_series(const_cast<SimulationTrace&>(t), s);
}

double parse_field(std::string_view field, std::size_t line, const std::string& source) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw ParseError(source + ": bad numeric field '" + std::string(field) + "'",
                         static_cast<int>(line), 1);
    }
    return v;
}

} // namespace

std::string csv_header(std::size_t n) {
    std::string h = "t";
    for (const char* name : kSignalNames) {
        for (std::size_t i = 1; i <= n; ++i) {
            h += ',';
            h += name;
            h += '_';
            h += std::to_string(i);
        }
    }
    return h;
}

void write_trace_csv(const SimulationTrace& trace, std::ostream& out) {
    out << csv_header(trace.n) << '\n';
    for (std::size_t row = 0; row < trace.rows(); ++row) {
        out << format_double(trace.times[row]);
        for (std::size_t s = 0; s < 8; ++s) {
            const std::vector<double>* series = signal_series(trace, s);
            for (std::size_t i = 0; i < trace.n; ++i) {
                out << ',' << format_double((*series)[row * trace.n + i]);
            }
        }
        out << '\n';
    }
}

void write_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write trace file '" + path.string() + "'");
    write_trace_csv(trace, out);
}

std::string trace_to_csv(const SimulationTrace& trace) {
    std::ostringstream out;
    write_trace_csv(trace, out);
    return out.str();
}

SimulationTrace read_trace_csv(std::istream& in, const std::string& source_name) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(source_name + ": empty trace file", 1, 1);

    // Recover n from the column count: 1 + 8n fields.
    std::size_t cols = 1;
    for (char c : line)
        if (c == ',') ++cols;
    if (cols < 9 || (cols - 1) % 8 != 0) {
        throw ParseError(source_name + ": unexpected column count " + std::to_string(cols), 1, 1);
    }
    const std::size_t n = (cols - 1) / 8;
    if (line != csv_header(n)) {
        throw ParseError(source_name + ": header does not match the trace schema", 1, 1);
    }

    SimulationTrace trace;
    trace.n = n;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::size_t field = 0;
        std::size_t begin = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i != line.size() && line[i] != ',') continue;
            const std::string_view f(line.data() + begin, i - begin);
            const double v = parse_field(f, line_no, source_name);
            if (field == 0) {
                trace.times.push_back(v);
            } else {
                signal_series(trace, (field - 1) / n)->push_back(v);
            }
            ++field;
            begin = i + 1;
        }
        if (field != cols) {
            throw ParseError(source_name + ": row has " + std::to_string(field) +
                                 " fields, expected " + std::to_string(cols),
                             static_cast<int>(line_no), 1);
        }
    }
    return trace;
}

SimulationTrace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trace file '" + path.string() + "'");
    return read_trace_csv(in, path.filename().string());
}

void write_metrics(const SyncMetrics& m, double t_f, std::size_t alpha_guard_events,
                   std::size_t warmup_events, std::ostream& out) {
    out << "t_f = " << format_double(t_f) << '\n';
    out << "sync_error = " << format_double(m.sync_error) << '\n';
    for (std::size_t i = 0; i < m.rms_delta_theta.size(); ++i) {
        out << "rms_delta_theta_" << (i + 1) << " = " << format_double(m.rms_delta_theta[i])
            << '\n';
    }
    out << "rms_delta_theta_overall = " << format_double(m.rms_delta_theta_overall) << '\n';
    for (std::size_t i = 0; i < m.max_abs_delta_theta.size(); ++i) {
        out << "max_abs_delta_theta_" << (i + 1) << " = "
            << format_double(m.max_abs_delta_theta[i]) << '\n';
    }
    out << "max_abs_delta_theta_overall = " << format_double(m.max_abs_delta_theta_overall)
        << '\n';
    out << "alpha_guard_events = " << alpha_guard_events << '\n';
    out << "estimator_warmup_events = " << warmup_events << '\n';
}

void write_metrics(const SyncMetrics& m, double t_f, std::size_t alpha_guard_events,
                   std::size_t warmup_events, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write metrics file '" + path.string() + "'");
    write_metrics(m, t_f, alpha_guard_events, warmup_events, out);
}

} // namespace kuramoto

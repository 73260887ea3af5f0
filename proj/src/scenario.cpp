#include "kuramoto/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace kuramoto {

namespace {

constexpr std::uint64_t kDefaultSeed = 123456789;

// ---------------------------------------------------------------------------
// expression evaluator: numbers, pi, + - * /, parentheses
// ---------------------------------------------------------------------------

struct ExprParser {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    double term() {
        double v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) v /= factor();
            else return v;
        }
    }

    double factor() {
        skip_ws();
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        if (eat('(')) {
            double v = expr();
            if (!eat(')')) throw ParseError("expected ')' in expression '" + std::string(s) + "'");
            return v;
        }
        if (s.size() - pos >= 2 && s.compare(pos, 2, "pi") == 0) {
            pos += 2;
            return std::numbers::pi;
        }
        const char* begin = s.data() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) {
            throw ParseError("expected a number in expression '" + std::string(s) + "'");
        }
        pos += static_cast<std::size_t>(end - begin);
        return v;
    }

    double run() {
        const double v = expr();
        skip_ws();
        if (pos != s.size()) {
            throw ParseError("trailing characters in expression '" + std::string(s) + "'");
        }
        return v;
    }
};

// ---------------------------------------------------------------------------
// sectioned key = value reader
// ---------------------------------------------------------------------------

struct RawValue {
    std::string text;
    int line = 0;
};

using Section = std::map<std::string, RawValue>;

struct RawScenario {
    std::map<std::string, Section> sections;
    std::string source;
};

std::string trim(std::string_view v) {
    std::size_t b = 0, e = v.size();
    while (b < e && std::isspace(static_cast<unsigned char>(v[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(v[e - 1]))) --e;
    return std::string(v.substr(b, e - b));
}

const std::map<std::string, std::set<std::string>> kSchema = {
    {"network", {"n", "omega", "coupling", "adjacency", "mode"}},
    {"uncertainty", {"freq_scale", "coupling_scale", "init_scale"}},
    {"trajectory",
     {"c", "tau", "linear_rate", "offset", "sine_amplitude", "sine_frequency", "sine_phase",
      "settle_tol"}},
    {"controller", {"kp", "window_horizon"}},
    {"simulation", {"sampling_period", "horizon", "noise_std", "rng_seed", "initial_phases"}},
    {"output", {"directory"}},
};

RawScenario read_raw(std::string_view text, const std::string& source_name) {
    RawScenario raw;
    raw.source = source_name;
    std::string current;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']') {
                throw ParseError(source_name + ": malformed section header", line_no, 1);
            }
            current = trim(stripped.substr(1, stripped.size() - 2));
            if (kSchema.find(current) == kSchema.end()) {
                throw ParseError(source_name + ": unknown section [" + current + "]", line_no, 1);
            }
            raw.sections[current];  // mark as present even if empty
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError(source_name + ": expected 'key = value'", line_no, 1);
        }
        if (current.empty()) {
            throw ParseError(source_name + ": key outside of any section", line_no, 1);
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const auto& allowed = kSchema.at(current);
        if (allowed.find(key) == allowed.end()) {
            throw ParseError(source_name + ": unknown key '" + key + "' in [" + current + "]",
                             line_no, 1);
        }
        auto [it, inserted] = raw.sections[current].emplace(key, RawValue{value, line_no});
        if (!inserted) {
            throw ParseError(source_name + ": duplicate key '" + key + "'", line_no, 1);
        }
    }
    return raw;
}

class ScenarioBuilder {
public:
    explicit ScenarioBuilder(RawScenario raw) : raw_(std::move(raw)) {}

    const RawValue& require(const std::string& section, const std::string& key) const {
        const auto sec = raw_.sections.find(section);
        if (sec == raw_.sections.end()) {
            throw ParseError(raw_.source + ": missing section [" + section + "]");
        }
        const auto it = sec->second.find(key);
        if (it == sec->second.end()) {
            throw ParseError(raw_.source + ": missing key '" + key + "' in [" + section + "]");
        }
        return it->second;
    }

    const RawValue* optional(const std::string& section, const std::string& key) const {
        const auto sec = raw_.sections.find(section);
        if (sec == raw_.sections.end()) return nullptr;
        const auto it = sec->second.find(key);
        return it == sec->second.end() ? nullptr : &it->second;
    }

    bool has_section(const std::string& section) const {
        return raw_.sections.find(section) != raw_.sections.end();
    }

    double number(const RawValue& v) const {
        try {
            ExprParser p{v.text};
            return p.run();
        } catch (const ParseError& e) {
            throw ParseError(raw_.source + ": " + e.what(), v.line, 1);
        }
    }

    std::vector<double> list(const RawValue& v) const {
        auto items = split_list(v);
        std::vector<double> out;
        out.reserve(items.size());
        for (const auto& item : items) out.push_back(number(RawValue{item, v.line}));
        return out;
    }

    /// Splits "[a, b, c]" into element strings, honoring nested brackets.
    std::vector<std::string> split_list(const RawValue& v) const {
        const std::string t = trim(v.text);
        if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
            throw ParseError(raw_.source + ": expected a bracketed list", v.line, 1);
        }
        std::vector<std::string> items;
        int depth = 0;
        std::string cur;
        for (std::size_t i = 1; i + 1 < t.size(); ++i) {
            const char c = t[i];
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == ',' && depth == 0) {
                items.push_back(trim(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!trim(cur).empty()) items.push_back(trim(cur));
        return items;
    }

    std::uint64_t integer(const RawValue& v) const {
        const std::string t = trim(v.text);
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(t.c_str(), &end, 10);
        if (end != t.c_str() + t.size() || t.empty()) {
            throw ParseError(raw_.source + ": expected an unsigned integer, got '" + t + "'",
                             v.line, 1);
        }
        return parsed;
    }

    std::string word(const RawValue& v) const {
        std::string t = trim(v.text);
        if (t.size() >= 2 && t.front() == '"' && t.back() == '"') {
            t = t.substr(1, t.size() - 2);
        }
        return t;
    }

    Scenario build() {
        Scenario scenario;
        SimulationConfig& cfg = scenario.config;

        const auto n = static_cast<std::size_t>(integer(require("network", "n")));
        const std::string mode_word = word(require("network", "mode"));
        ControlMode mode;
        if (mode_word == "multiplicative") mode = ControlMode::multiplicative;
        else if (mode_word == "additive") mode = ControlMode::additive;
        else {
            throw ParseError(raw_.source + ": mode must be 'multiplicative' or 'additive'",
                             require("network", "mode").line, 1);
        }

        const RawValue& adj = require("network", "adjacency");
        std::vector<double> omega = list(require("network", "omega"));
        const double coupling = number(require("network", "coupling"));
        if (word(adj) == "complete") {
            cfg.model = NetworkModel::complete(n, std::move(omega), coupling, mode);
        } else {
            cfg.model.n = n;
            cfg.model.omega = std::move(omega);
            cfg.model.coupling = coupling;
            cfg.model.mode = mode;
            cfg.model.adjacency.clear();
            for (const auto& row_text : split_list(adj)) {
                const auto row = list(RawValue{row_text, adj.line});
                if (row.size() != n) {
                    throw ParseError(raw_.source + ": adjacency rows must have n entries",
                                     adj.line, 1);
                }
                cfg.model.adjacency.insert(cfg.model.adjacency.end(), row.begin(), row.end());
            }
            cfg.model.validate();
        }

        cfg.unc = UncertaintySet::identity(n);
        if (has_section("uncertainty")) {
            if (const auto* v = optional("uncertainty", "freq_scale")) cfg.unc.freq_scale = list(*v);
            if (const auto* v = optional("uncertainty", "coupling_scale"))
                cfg.unc.coupling_scale = number(*v);
            if (const auto* v = optional("uncertainty", "init_scale")) cfg.unc.init_scale = list(*v);
            cfg.unc.validate(n);
        }

        SyncFunction sync;
        sync.linear_rate = number(require("trajectory", "linear_rate"));
        sync.offset = number(require("trajectory", "offset"));
        sync.sine_amplitude = number(require("trajectory", "sine_amplitude"));
        sync.sine_frequency = number(require("trajectory", "sine_frequency"));
        sync.sine_phase = number(require("trajectory", "sine_phase"));
        std::vector<double> offsets = list(require("trajectory", "c"));
        const double tau = number(require("trajectory", "tau"));
        double settle_tol = 1e-3;
        if (const auto* v = optional("trajectory", "settle_tol")) settle_tol = number(*v);

        // initial_phases are the nominal values: they seed the reference plan,
        // and the true plant starts from their init_scale-perturbed images.
        std::vector<double> nominal = list(require("simulation", "initial_phases"));
        if (nominal.size() != n) {
            throw ParseError(raw_.source + ": initial_phases must have n entries",
                             require("simulation", "initial_phases").line, 1);
        }
        cfg.plan = ReferencePlan::from_initial_phases(sync, std::move(offsets), tau, nominal,
                                                      settle_tol);
        if (cfg.plan.size() != n) {
            throw ParseError(raw_.source + ": c must have n entries",
                             require("trajectory", "c").line, 1);
        }
        cfg.initial_phases.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            cfg.initial_phases[i] = nominal[i] * cfg.unc.init_scale[i];
        }

        const RawValue& kp = require("controller", "kp");
        if (trim(kp.text).front() == '[') {
            cfg.kp = list(kp);
        } else {
            cfg.kp.assign(n, number(kp));
        }
        cfg.window_horizon = number(require("controller", "window_horizon"));

        cfg.sampling_period = number(require("simulation", "sampling_period"));
        cfg.horizon = number(require("simulation", "horizon"));
        cfg.noise_std = number(require("simulation", "noise_std"));
        cfg.rng_seed = integer(require("simulation", "rng_seed"));

        if (const auto* v = optional("output", "directory")) {
            scenario.output_directory = word(*v);
        }

        cfg.validate();
        return scenario;
    }

private:
    RawScenario raw_;
};

} // namespace

std::vector<std::string> preset_names() {
    return {"paper-multiplicative", "paper-additive"};
}

SimulationConfig preset(std::string_view name) {
    const bool multiplicative = name == "paper-multiplicative";
    if (!multiplicative && name != "paper-additive") {
        std::string valid;
        for (const auto& p : preset_names()) valid += " " + p;
        throw UsageError("unknown preset '" + std::string(name) + "' (valid:" + valid + ")");
    }

    constexpr double half_pi = std::numbers::pi / 2.0;
    SimulationConfig cfg;
    cfg.model = NetworkModel::complete(
        3, {5.0, 7.0, 8.0}, 1.0,
        multiplicative ? ControlMode::multiplicative : ControlMode::additive);
    cfg.unc.freq_scale = {1.2, 0.8, 1.2};
    cfg.unc.coupling_scale = 0.8;
    cfg.unc.init_scale = {0.8, 1.2, 0.8};

    SyncFunction sync;
    sync.linear_rate = 7.5;
    sync.offset = 7.0;
    sync.sine_amplitude = 2.0;
    sync.sine_frequency = 0.5;
    sync.sine_phase = 0.0;

    const std::vector<double> nominal = {0.5, 1.0, 2.0};
    std::vector<double> offsets =
        multiplicative ? std::vector<double>{half_pi, half_pi, std::numbers::pi}
                       : std::vector<double>{half_pi, half_pi, half_pi};
    cfg.plan = ReferencePlan::from_initial_phases(sync, std::move(offsets), 1.0, nominal);

    cfg.sampling_period = 0.01;
    cfg.horizon = 40.0;
    cfg.noise_std = 0.1;
    cfg.kp = {1.0, 1.0, 1.0};
    cfg.window_horizon = 0.3;
    cfg.rng_seed = kDefaultSeed;
    cfg.initial_phases.resize(3);
    for (std::size_t i = 0; i < 3; ++i) {
        cfg.initial_phases[i] = nominal[i] * cfg.unc.init_scale[i];
    }
    cfg.validate();
    return cfg;
}

Scenario parse_scenario(std::string_view text, const std::string& source_name) {
    return ScenarioBuilder(read_raw(text, source_name)).build();
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.filename().string());
}

double eval_number(std::string_view expr) {
    ExprParser p{expr};
    return p.run();
}

} // namespace kuramoto

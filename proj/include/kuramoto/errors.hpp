#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kuramoto {

/// Invalid model/plan/config parameters (bad tau, empty network, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad command-line usage (unknown preset, missing argument).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario file could not be parsed. line/column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line = 0, int column = 0)
        : std::runtime_error(std::move(msg)), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Flatness inversion hit a vanishing coupling denominator.
class SingularityError : public std::runtime_error {
public:
    SingularityError(std::string msg, std::size_t oscillator, double time)
        : std::runtime_error(std::move(msg)), oscillator_(oscillator), time_(time) {}

    std::size_t oscillator() const noexcept { return oscillator_; }
    double time() const noexcept { return time_; }

private:
    std::size_t oscillator_;
    double time_;
};

/// No settling time exists within the searched horizon.
class InfeasiblePlanError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Simulation state blew up (non-finite phase or |thetadot| past the guard).
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::string msg, double time)
        : std::runtime_error(std::move(msg)), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace kuramoto

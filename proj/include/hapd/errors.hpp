#pragma once

#include <stdexcept>
#include <string>

namespace hapd {

// Malformed input file (config, coefficient table, scenario, archive).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, int line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
          path_(std::move(path)), line_(line) {}

    const std::string& path() const { return path_; }
    int line() const { return line_; }

private:
    std::string path_;
    int line_;
};

// Polar-form singularity (V <= 0, cos(beta) ~ 0, |theta| >= pi/2).
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TrimFailure : public std::runtime_error {
public:
    TrimFailure(const std::string& what, double final_residual)
        : std::runtime_error(what + " (final residual " + std::to_string(final_residual) + ")"),
          residual_(final_residual) {}

    double final_residual() const { return residual_; }

private:
    double residual_;
};

class LinearizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Nonlinear integration hit a singular state; carries the failure time.
class SimulationAbort : public std::runtime_error {
public:
    SimulationAbort(const std::string& what, double time)
        : std::runtime_error(what + " at t=" + std::to_string(time) + " s"), time_(time) {}

    double time() const { return time_; }

private:
    double time_;
};

}  // namespace hapd

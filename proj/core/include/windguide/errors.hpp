#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace windguide {

/// Input outside the mathematical domain of an operation (non-positive mass, speed, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// State at which the equations of motion are singular (airspeed below guard, vertical flight path).
class SingularStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The 2x2 position-change system is (numerically) singular.
class SingularProjectionError : public std::runtime_error {
public:
    SingularProjectionError(const std::string& what, double q2d)
        : std::runtime_error(what), q2d_(q2d) {}
    double q2d() const noexcept { return q2d_; }

private:
    double q2d_;
};

/// Aggregated configuration validation failure. Each entry is "<field path>: <message>".
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems)) {}
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& p) {
        std::string out = "invalid configuration";
        for (const auto& s : p) {
            out += "\n  ";
            out += s;
        }
        return out;
    }
    std::vector<std::string> problems_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One or more episodes of a heading sweep aborted.
class SweepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace windguide

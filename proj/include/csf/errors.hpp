#pragma once
// Error types the command-line driver maps onto exit codes.

#include <stdexcept>
#include <string>

namespace csf {

// invalid configuration file or option combination (exit code 2)
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// non-finite state detected during time stepping (exit code 3)
struct BlowupError : std::runtime_error {
    double t;

    explicit BlowupError(double t_)
        : std::runtime_error("non-finite state at t = " + std::to_string(t_)), t(t_) {}
};

// filesystem failure while writing outputs (exit code 4)
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace csf

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sirnet {

/// Numerical failure: fixed-point non-convergence, monotonicity violation,
/// coverage inversion outside the achievable range, ...
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Graph/sequence generation failure. Carries the attempt count when the
/// failure came from rejection sampling.
struct GenerationError : std::runtime_error {
    std::int64_t attempts = 0;
    explicit GenerationError(const std::string& msg, std::int64_t attempts_ = 0)
        : std::runtime_error(msg), attempts(attempts_) {}
};

// Bad user input (CLI arguments, spec strings, domain violations) is reported
// as std::invalid_argument throughout.

} // namespace sirnet

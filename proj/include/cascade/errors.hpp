#pragma once

#include <stdexcept>
#include <string>

namespace cascade {

// Bad inputs: malformed configs, violated preconditions, unusable arguments.
// The CLI maps this to exit code 1.
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numeric breakdown at runtime: non-finite values, integrator leaving the
// admissible box by more than tolerance. The CLI maps this to exit code 2.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cascade

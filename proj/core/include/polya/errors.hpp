#pragma once

#include <stdexcept>
#include <string>

namespace polya {

// Argument outside the mathematical domain of a function (poles, x <= 0 for K_nu, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Inconsistent configuration or call (space mismatch, degenerate shifts).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numerical result failed its own accuracy check.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace polya

#pragma once

#include <stdexcept>

namespace ymsym {

// Invalid user input: unknown ids, malformed expressions, mismatched dimensions.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numerical guarantee failed: solver non-convergence, invariant violation.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested object exceeds the configured memory budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ymsym

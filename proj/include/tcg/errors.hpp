#pragma once

#include <stdexcept>

namespace tcg {

// Raised when a request exceeds a configured resource budget (dense-state
// memory, exhaustive-search size). The message carries the work estimate.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tcg

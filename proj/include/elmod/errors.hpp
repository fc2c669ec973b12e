#pragma once

#include <stdexcept>
#include <string>

namespace elmod {

// Enumeration would exceed the configured element cap.
struct CapExceededError : std::runtime_error {
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Integer factoring budget exceeded (generator too large).
struct FactorBudgetError : std::runtime_error {
    explicit FactorBudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed serialized input (ideal strings, spec files, matrices).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A domain invariant was violated (spec file fails validation,
// non-invertible generator, divisibility/coprimality preconditions).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace elmod

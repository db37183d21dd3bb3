#pragma once

#include <stdexcept>
#include <string>

namespace puncture {

// Malformed data: shape mismatches, invariant violations, bad input.
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request falls outside the supported symbolic calculus (whitelisted
// tables, registered canonical maps).  Callers may catch this and fall
// back to windowed computation.
struct CalculusError : std::runtime_error {
    explicit CalculusError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace puncture

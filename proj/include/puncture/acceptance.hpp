#pragma once

#include <cstdint>

#include "puncture/rab.hpp"

namespace puncture::acceptance {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Criteria 1-9 at the configured field.
std::vector<CriterionResult> run_criteria(const Field& field, std::uint64_t seed);

/// The full suite: criteria 1-9 over the given field plus, when the
/// field is Q, criterion 10 (identical verdicts over F_10007 and
/// F_65537).
std::vector<CriterionResult> run_all(const Field& field, std::uint64_t seed);

/// One "criterion k: PASS/FAIL name (time)" line per entry.
std::string format_lines(const std::vector<CriterionResult>& results);

bool all_pass(const std::vector<CriterionResult>& results);

} // namespace puncture::acceptance

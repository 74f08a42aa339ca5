#pragma once

// The acceptance harness: thirteen numbered checks over the built-in
// scenarios and seeded random convex pairs. Each check returns a pass flag,
// a one-line summary and a JSON report; reports are deterministic in the seed.

#include "fixpoint/scenarios.hpp"

namespace fixpoint {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string summary;
    Json report;
};

inline constexpr int kCriterionCount = 13;

CriterionResult run_criterion(int id, std::uint64_t seed = 0);

/// Criteria of a named suite: paper_examples, convex_properties,
/// necessity_bounds or all. DomainError for other names.
std::vector<int> suite_criteria(const std::string& suite);

std::vector<CriterionResult> run_suite(const std::string& suite, std::uint64_t seed = 0);

/// Randomized convex pair number i of the property corpus (families and
/// dimensions cycle with i).
Scenario corpus_pair(int i, std::uint64_t seed);

} // namespace fixpoint

#pragma once

#include <cstdint>

#include "schedlab/assignment.hpp"
#include "schedlab/instance.hpp"

namespace schedlab {

enum class Objective { Makespan, MaxMin };

struct OracleResult {
    Rational optimum;
    IntegralAssignment witness; // lexicographically smallest optimal assignment
};

/// Exhaustive branch-and-bound over all integral assignments restricted to
/// eligible machines.  Ground truth for small instances.
///
/// The search requires prod_j |eligible(j)| <= budget and additionally
/// counts explored nodes against the same budget; throws BudgetExceeded
/// when either limit is hit.  Given fixed inputs the result is
/// deterministic, and tightening the budget never changes an answer that
/// is returned without BudgetExceeded.
OracleResult brute_force(const Instance& instance, Objective objective,
                         std::int64_t budget = 100'000'000);

} // namespace schedlab

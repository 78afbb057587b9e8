#pragma once

#include "rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scoreforge {

struct LpVariable {
  std::string name;
  BigInt lo, hi;
};

struct LpTerm {
  int var = 0;
  Rational coeff;
};

// Two-sided row: lo <= sum coeff*var <= hi, either side optional.
struct LpConstraint {
  std::vector<LpTerm> terms;
  std::optional<Rational> lo, hi;
};

struct LinearSystem {
  std::vector<LpVariable> vars;
  std::vector<LpConstraint> rows;
};

struct FeasibilityResult {
  enum class Status { Feasible, Infeasible, Indeterminate };
  Status status = Status::Infeasible;
  std::vector<BigInt> assignment;  // one value per variable when feasible
  uint64_t nodes = 0;
};

struct LpOptions {
  uint64_t node_budget = 1'000'000;
};

// Exact rational recheck of an assignment against all bounds and rows.
bool check_assignment(const LinearSystem& sys, const std::vector<BigInt>& x);

// Integer feasibility by branch and bound: LP relaxations solved with a dense
// phase-1 simplex over exact rationals under Bland's anti-cycling rule;
// single-constraint bound propagation tightens each node before branching;
// branching on the most fractional variable, nearest-bound child first.
// Exceeding the node budget yields Indeterminate, never a verdict.
FeasibilityResult solve_feasibility(const LinearSystem& sys, const LpOptions& opts = {});

// Exhaustive oracle; throws TooLargeError via std::invalid_argument-compatible
// runtime error when the product of ranges exceeds 10^7.
FeasibilityResult solve_feasibility_bruteforce(const LinearSystem& sys);

}  // namespace scoreforge

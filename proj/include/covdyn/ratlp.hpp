#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "covdyn/rational.hpp"

namespace covdyn {

// Equality-form linear program over nonnegative variables:
//
//   maximize  objective . x   subject to  rows x = rhs,  x >= 0.
//
// An empty objective means pure feasibility. Callers pre-convert any
// inequality constraints; nothing here needs them.
struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;
  std::vector<Rat> objective;  // empty or size num_vars
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rat> assignment;  // Optimal only; satisfies rows x = rhs exactly
  Rat objective_value = 0;      // Optimal only
  Rat phase1_optimum = 0;       // Infeasible only; strictly positive
};

// Two-phase primal simplex with Bland's anti-cycling rule, all arithmetic
// exact. Deterministic for a fixed input.
LpOutcome lp_solve(const LpProblem& problem);

}  // namespace covdyn

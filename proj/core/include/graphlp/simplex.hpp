#pragma once

#include "graphlp/rational.hpp"

#include <cstddef>
#include <vector>

namespace graphlp {

enum class Relation { LessEq, GreaterEq, Equal };

struct LinearConstraint {
  RationalVector coeffs;
  Relation relation = Relation::LessEq;
  Rational rhs = 0;
};

// maximize objective . x  subject to constraints and x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  RationalVector objective;
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RationalVector x;
  Rational objective = 0;
};

// Two-phase dense simplex over exact rationals with Bland's rule, so it
// always terminates and the returned vertex is a deterministic function of
// the input.
LpResult solve_lp(const LinearProgram& lp);

// Optimizes each objective in turn, pinning the optimum of the previous ones
// as equality constraints.  Returns the final result (Infeasible/Unbounded
// propagate from the first stage that fails).
LpResult solve_lexicographic(LinearProgram lp, const std::vector<RationalVector>& objectives);

}  // namespace graphlp

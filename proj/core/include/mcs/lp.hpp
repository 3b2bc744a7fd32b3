#pragma once

#include <vector>

namespace mcs {

enum class Relation { le, eq, ge };

struct ConstraintRow {
  std::vector<double> coeffs;
  Relation rel = Relation::le;
  double rhs = 0.0;
};

// Minimization LP with per-variable bounds. Lower bounds must be finite;
// upper bounds may be +infinity.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<ConstraintRow> rows;
  std::vector<double> lower;
  std::vector<double> upper;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> values;
  double objective = 0.0;
};

// Two-phase dense-tableau simplex with Bland's rule.
LpSolution simplex_solve(const LinearProgram& lp);

enum class MilpStatus { optimal, infeasible };

struct MilpSolution {
  MilpStatus status = MilpStatus::infeasible;
  std::vector<double> values;  // integral on every index in integer_vars
  double objective = 0.0;
};

// Depth-first branch and bound over the LP relaxation: branch on the most
// fractional variable, floor child first, prune on the incumbent bound.
// A value within 1e-6 of an integer counts as integral.
MilpSolution branch_and_bound(const LinearProgram& lp,
                              const std::vector<int>& integer_vars);

}  // namespace mcs

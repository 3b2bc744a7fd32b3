#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mcs/errors.hpp"
#include "mcs/lp.hpp"

namespace mcs {

namespace {

constexpr double kIntTol = 1e-6;

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
};

}  // namespace

MilpSolution branch_and_bound(const LinearProgram& lp,
                              const std::vector<int>& integer_vars) {
  MilpSolution best;
  double best_obj = std::numeric_limits<double>::infinity();

  std::vector<Node> stack;
  stack.push_back({lp.lower, lp.upper});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();

    LinearProgram relax = lp;
    relax.lower = node.lower;
    relax.upper = node.upper;
    const LpSolution sol = simplex_solve(relax);
    if (sol.status == LpStatus::infeasible) continue;
    if (sol.status == LpStatus::unbounded) {
      throw ParameterError("integer program relaxation is unbounded");
    }
    if (sol.objective >= best_obj - 1e-9) continue;

    // Most fractional variable, lowest index on ties.
    int branch_var = -1;
    double branch_frac = 0.0;
    for (int j : integer_vars) {
      const double v = sol.values[j];
      const double frac = std::abs(v - std::round(v));
      if (frac > kIntTol && frac > branch_frac + 1e-12) {
        branch_frac = frac;
        branch_var = j;
      }
    }
    if (branch_var < 0) {
      MilpSolution cand;
      cand.status = MilpStatus::optimal;
      cand.values = sol.values;
      for (int j : integer_vars) cand.values[j] = std::round(cand.values[j]);
      cand.objective = 0.0;
      for (std::size_t j = 0; j < cand.values.size(); ++j) {
        cand.objective += lp.objective[j] * cand.values[j];
      }
      if (cand.objective < best_obj) {
        best_obj = cand.objective;
        best = std::move(cand);
      }
      continue;
    }

    const double v = sol.values[branch_var];
    Node ceil_child = node;
    ceil_child.lower[branch_var] = std::ceil(v);
    Node floor_child = std::move(node);
    floor_child.upper[branch_var] = std::floor(v);
    stack.push_back(std::move(ceil_child));
    stack.push_back(std::move(floor_child));  // explored first
  }
  return best;
}

}  // namespace mcs

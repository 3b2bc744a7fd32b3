#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mcs/geo.hpp"

namespace mcs {

// More participants, few tasks: tasks demand a fixed number of performers,
// drawn from working areas; minimize total incentive and total distance.

struct MpftArea {
  int id = 0;
  Location loc;        // area reference point (centroid)
  int population = 1;  // registered participants |A_i|
  double incentive = 1.0;  // payment per participant from this area

  bool operator==(const MpftArea&) const = default;
};

struct MpftTask {
  int id = 0;
  Location loc;
  int demand = 1;  // performers required

  bool operator==(const MpftTask&) const = default;
};

struct MpftInstance {
  std::vector<MpftArea> areas;
  std::vector<MpftTask> tasks;
  std::vector<std::vector<double>> dist;  // m x n meters, area -> task

  bool operator==(const MpftInstance&) const = default;
};

// Throws ParameterError on inconsistent dimensions or nonpositive
// populations/incentives/demands, InfeasibleError when total supply cannot
// cover total demand.
void validate(const MpftInstance& inst);

struct AllocationMatrix {
  std::vector<std::vector<std::int64_t>> x;  // m x n participants per pair
  double incentive = 0.0;
  double distance = 0.0;
};

struct ObjectiveBounds {
  double c_min = 0.0;
  double c_max = 0.0;
  double d_min = 0.0;
  double d_max = 0.0;
};

// Payoff-table bounds: each objective's minimum, plus its value at the other
// objective's optimum; ties among optima broken by minimizing the secondary
// objective.
ObjectiveBounds compute_bounds(const MpftInstance& inst);

// Linear-weight scalarization over normalized objectives, solved exactly as
// a transportation problem (a degenerate normalization span contributes 0).
AllocationMatrix solve_w_ilp(const MpftInstance& inst, double k1, double k2);

// Minimum distance under an incentive budget, solved by branch and bound.
// Throws InfeasibleBudgetError (naming c_min) when the budget is below it.
AllocationMatrix solve_c_ilp(const MpftInstance& inst, double budget);

// Unit-at-a-time greedy on the scalarized per-unit cost.
AllocationMatrix solve_w_grd(const MpftInstance& inst, double k1, double k2);

// Min-distance greedy, then unit reassignments toward cheaper areas (best
// incentive reduction per meter added) until the budget holds.
AllocationMatrix solve_c_grd(const MpftInstance& inst, double budget);

struct ParetoPoint {
  double incentive = 0.0;
  double distance = 0.0;
  std::pair<double, double> parameter;  // (k1, k2) or (budget, 0)
  AllocationMatrix allocation;
};

enum class SweepMode { weights, budgets };

// Runs the exact solver per grid entry (weights mode: entry = k1, k2 = 1-k1;
// budgets mode: entry = budget), drops dominated points, sorts by incentive.
std::vector<ParetoPoint> pareto_sweep(const MpftInstance& inst, SweepMode mode,
                                      const std::vector<double>& grid);

// Objective pairs of every feasible allocation (optionally budget-filtered).
// Desk scale only: m <= 4, n <= 4, demands <= 3.
std::vector<std::pair<double, double>> exact_enum_oracle(
    const MpftInstance& inst, std::optional<double> budget = std::nullopt);

}  // namespace mcs

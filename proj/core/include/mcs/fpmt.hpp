#pragma once

#include <cstdint>
#include <vector>

#include "mcs/flow.hpp"
#include "mcs/geo.hpp"
#include "mcs/tsp.hpp"

namespace mcs {

// Few participants, more tasks: every participant must take on a quota of
// tasks; maximize accomplished tasks, then minimize total travel distance.

struct FpmtParticipant {
  int id = 0;
  Location loc;
};

struct FpmtTask {
  int id = 0;
  Location loc;
  int capacity = 1;  // maximum performers for this task
};

struct FpmtInstance {
  std::vector<FpmtParticipant> participants;
  std::vector<FpmtTask> tasks;
  int quota = 1;  // tasks per participant

  bool operator==(const FpmtInstance&) const;
};

// Throws ParameterError if ids repeat, the quota is invalid, or any
// capacity is nonpositive.
void validate(const FpmtInstance& inst);

// One candidate quota-sized task set for a participant, with the
// precomputed route through it.
struct CandidateSet {
  std::vector<int> tasks;  // sorted task indices, exactly quota entries
  std::vector<int> route;  // task indices in visit order
  double cost = 0.0;       // open-path route length in meters
};

struct TaskSetFamily {
  std::vector<std::vector<CandidateSet>> per_participant;
};

enum class RouteSolverChoice { auto_select, exact, christofides };

struct EnumerationOptions {
  RouteSolverChoice solver = RouteSolverChoice::auto_select;
  std::size_t route_budget = 1'000'000;
};

// All C(n, q) quota-subsets per participant, route costs included.
// Throws EnumerationBudgetError when m * C(n, q) exceeds the route budget.
TaskSetFamily enumerate_full(const FpmtInstance& inst,
                             const EnumerationOptions& opts = {});

// C(k, q) subsets of each participant's k nearest tasks (ties by index).
TaskSetFamily enumerate_pruned(const FpmtInstance& inst, int k,
                               const EnumerationOptions& opts = {});

// Three-level flow network: source -> participants (cap q, cost 0) ->
// task-set nodes (cap q, cost = route length) -> tasks (cap 1, cost 0)
// -> sink (cap p_j, cost 0). Task-set nodes are shared across participants
// with equal task combinations.
FlowNetwork build_network(const FpmtInstance& inst, const TaskSetFamily& family);

struct ParticipantAssignment {
  int participant = 0;        // index into instance.participants
  std::vector<int> route;     // task indices in visit order
  double distance = 0.0;
  bool complete = true;       // route holds exactly quota tasks
};

struct FpmtAssignment {
  std::vector<ParticipantAssignment> assigned;
  std::vector<std::vector<int>> performers;  // per task: participant indices
  std::int64_t accomplished = 0;
  double total_distance = 0.0;
};

// Quota-block augmentation: repeatedly take the cheapest feasible
// (participant, unused task set) block until none remains.
FpmtAssignment solve_mt_mcmf(const FpmtInstance& inst,
                             const TaskSetFamily& family);

// solve_mt_mcmf over the k-nearest pruned family.
FpmtAssignment solve_mtp_mcmf(const FpmtInstance& inst, int k,
                              const EnumerationOptions& opts = {});

// Greedy baseline: each participant walks to the nearest task with residual
// capacity, quota times.
FpmtAssignment solve_mt_grdpt(const FpmtInstance& inst);

// Exhaustive assignment search maximizing accomplished tasks, then
// minimizing distance. Desk scale only (m <= 5, <= 30 candidate sets each).
FpmtAssignment exact_oracle(const FpmtInstance& inst,
                            const TaskSetFamily& family);

struct FpmtMetrics {
  double total_distance = 0.0;
  std::vector<double> completion_minutes;  // per assigned participant
  double mean_completion_minutes = 0.0;
  std::int64_t accomplished = 0;
  double performer_count_variance = 0.0;  // population variance over tasks
};

FpmtMetrics assignment_metrics(const FpmtAssignment& a,
                               double speed_meters_per_minute);

}  // namespace mcs

#pragma once

#include <vector>

#include "mcs/geo.hpp"

namespace mcs {

// One participant plus a task set: find a short open route from the
// participant through every task.
struct RouteProblem {
  DistanceMatrix dist;  // q+1 nodes, node `start` is the participant
  int start = 0;
};

struct Route {
  std::vector<int> order;  // visits every node once, order[0] == start
  double length = 0.0;     // sum of consecutive-pair distances, no return edge
};

enum class RouteSolver { exact, christofides };

// Admission limit for the exact dynamic program (memory bound).
inline constexpr int kExactRouteNodeLimit = 21;

// Minimum-length Hamiltonian path from `start`, by dynamic programming over
// vertex subsets. Ties broken toward the lexicographically smallest order.
// Throws SizeLimitError above kExactRouteNodeLimit nodes.
Route exact_open_path(const RouteProblem& p);

// Christofides cycle (Prim MST, exact odd-vertex matching by subset DP,
// Eulerian circuit, shortcutting), rotated to start and with the edge back
// into `start` dropped to yield an open path.
Route christofides_open_path(const RouteProblem& p);

// Closed-tour length for the chosen solver: the optimal Hamiltonian cycle
// (exact) or the Christofides cycle before the return edge is dropped.
double cycle_length(const RouteProblem& p, RouteSolver solver);

// Recomputes a route's length from its order against the problem's matrix.
double route_length(const DistanceMatrix& dist, const std::vector<int>& order);

}  // namespace mcs

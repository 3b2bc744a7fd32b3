#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mcs {

struct Arc {
  int from = 0;
  int to = 0;
  std::int64_t capacity = 0;
  double cost = 0.0;  // per unit of flow
};

struct FlowNetwork {
  int nodes = 0;
  std::vector<Arc> arcs;
  int source = 0;
  int sink = 0;
};

// Throws ParameterError if capacities are negative, costs are negative, the
// source has incoming arcs, or the sink has outgoing arcs.
void validate(const FlowNetwork& net);

struct Flow {
  std::vector<std::int64_t> arc_flow;  // aligned with FlowNetwork::arcs
  std::int64_t value = 0;
  double cost = 0.0;
};

// Minimum-cost flow of the requested value by successive shortest paths with
// node potentials. With no target, pushes the maximum flow. With a target,
// throws InfeasibleError if the maximum flow falls short.
Flow min_cost_flow(const FlowNetwork& net,
                   std::optional<std::int64_t> target = std::nullopt);

}  // namespace mcs

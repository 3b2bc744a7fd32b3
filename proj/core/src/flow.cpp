#include "mcs/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "mcs/errors.hpp"

namespace mcs {

void validate(const FlowNetwork& net) {
  if (net.nodes <= 0 || net.source < 0 || net.source >= net.nodes ||
      net.sink < 0 || net.sink >= net.nodes || net.source == net.sink) {
    throw ParameterError("flow network node/source/sink indices invalid");
  }
  for (const Arc& a : net.arcs) {
    if (a.from < 0 || a.from >= net.nodes || a.to < 0 || a.to >= net.nodes) {
      throw ParameterError("arc endpoint out of range");
    }
    if (a.capacity < 0) {
      throw ParameterError("arc capacity must be nonnegative");
    }
    if (a.cost < 0.0) {
      throw ParameterError("arc cost must be nonnegative");
    }
    if (a.to == net.source) {
      throw ParameterError("source must have no incoming arcs");
    }
    if (a.from == net.sink) {
      throw ParameterError("sink must have no outgoing arcs");
    }
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ResidualArc {
  int to;
  std::int64_t cap;
  double cost;
  int rev;       // index of the paired arc in adj[to]
  int orig;      // index into net.arcs, -1 for reverse arcs
};

}  // namespace

Flow min_cost_flow(const FlowNetwork& net, std::optional<std::int64_t> target) {
  validate(net);
  const int n = net.nodes;
  std::vector<std::vector<ResidualArc>> adj(n);
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    const Arc& a = net.arcs[i];
    adj[a.from].push_back({a.to, a.capacity, a.cost,
                           static_cast<int>(adj[a.to].size()),
                           static_cast<int>(i)});
    adj[a.to].push_back({a.from, 0, -a.cost,
                         static_cast<int>(adj[a.from].size()) - 1, -1});
  }

  std::vector<double> potential(n, 0.0);
  std::vector<double> dist(n);
  std::vector<int> prev_node(n), prev_arc(n);
  Flow result;
  result.arc_flow.assign(net.arcs.size(), 0);

  std::int64_t remaining =
      target.value_or(std::numeric_limits<std::int64_t>::max());
  while (remaining > 0) {
    // Dijkstra on reduced costs; initial costs are nonnegative and the
    // potential update keeps them so after each augmentation.
    std::fill(dist.begin(), dist.end(), kInf);
    dist[net.source] = 0.0;
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.emplace(0.0, net.source);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      for (std::size_t i = 0; i < adj[v].size(); ++i) {
        const ResidualArc& ra = adj[v][i];
        if (ra.cap <= 0) continue;
        const double reduced = std::max(0.0, ra.cost + potential[v] - potential[ra.to]);
        if (dist[v] + reduced < dist[ra.to]) {
          dist[ra.to] = dist[v] + reduced;
          prev_node[ra.to] = v;
          prev_arc[ra.to] = static_cast<int>(i);
          heap.emplace(dist[ra.to], ra.to);
        }
      }
    }
    if (dist[net.sink] == kInf) break;
    for (int v = 0; v < n; ++v) {
      if (dist[v] < kInf) potential[v] += dist[v];
    }
    std::int64_t push = remaining;
    for (int v = net.sink; v != net.source; v = prev_node[v]) {
      push = std::min(push, adj[prev_node[v]][prev_arc[v]].cap);
    }
    for (int v = net.sink; v != net.source; v = prev_node[v]) {
      ResidualArc& ra = adj[prev_node[v]][prev_arc[v]];
      ra.cap -= push;
      adj[v][ra.rev].cap += push;
    }
    result.value += push;
    remaining -= push;
  }

  if (target.has_value() && result.value < *target) {
    throw InfeasibleError("requested flow value exceeds the maximum flow");
  }
  for (int v = 0; v < n; ++v) {
    for (const ResidualArc& ra : adj[v]) {
      if (ra.orig >= 0) {
        const std::int64_t f = net.arcs[ra.orig].capacity - ra.cap;
        result.arc_flow[ra.orig] = f;
        result.cost += static_cast<double>(f) * net.arcs[ra.orig].cost;
      }
    }
  }
  return result;
}

}  // namespace mcs

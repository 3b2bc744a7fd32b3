#include "mcs/tsp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>

#include "mcs/errors.hpp"

namespace mcs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_problem(const RouteProblem& p) {
  const int n = static_cast<int>(p.dist.n);
  if (n < 1) {
    throw ParameterError("route problem needs at least one node");
  }
  if (p.start < 0 || p.start >= n) {
    throw ParameterError("route start index out of range");
  }
}

// Suffix table h[mask][v]: shortest path starting at v that visits exactly
// the non-start nodes selected by mask. Enables forward reconstruction that
// is lexicographically smallest among optimal orders.
struct HeldKarpTable {
  std::vector<int> others;       // non-start node indices, ascending
  std::vector<double> h;         // (1<<others.size()) * n
  int n = 0;

  double& at(std::uint32_t mask, int v) { return h[static_cast<std::size_t>(mask) * n + v]; }
  double at(std::uint32_t mask, int v) const { return h[static_cast<std::size_t>(mask) * n + v]; }
};

HeldKarpTable build_suffix_table(const RouteProblem& p) {
  const int n = static_cast<int>(p.dist.n);
  HeldKarpTable t;
  t.n = n;
  for (int v = 0; v < n; ++v) {
    if (v != p.start) t.others.push_back(v);
  }
  const std::uint32_t full = (1u << t.others.size()) - 1;
  t.h.assign((static_cast<std::size_t>(full) + 1) * n, kInf);
  for (int v = 0; v < n; ++v) t.at(0, v) = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int v = 0; v < n; ++v) {
      double best = kInf;
      for (std::size_t u = 0; u < t.others.size(); ++u) {
        const std::uint32_t bit = 1u << u;
        if (!(mask & bit)) continue;
        const int node = t.others[u];
        const double cand = p.dist.at(v, node) + t.at(mask ^ bit, node);
        if (cand < best) best = cand;
      }
      t.at(mask, v) = best;
    }
  }
  return t;
}

}  // namespace

double route_length(const DistanceMatrix& dist, const std::vector<int>& order) {
  double len = 0.0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    len += dist.at(order[i - 1], order[i]);
  }
  return len;
}

Route exact_open_path(const RouteProblem& p) {
  check_problem(p);
  const int n = static_cast<int>(p.dist.n);
  if (n > kExactRouteNodeLimit) {
    throw SizeLimitError("exact route solver admits at most 21 nodes");
  }
  if (n == 1) {
    return Route{{p.start}, 0.0};
  }
  const HeldKarpTable t = build_suffix_table(p);
  const std::uint32_t full = (1u << t.others.size()) - 1;

  Route r;
  r.order.reserve(n);
  r.order.push_back(p.start);
  r.length = t.at(full, p.start);
  std::uint32_t mask = full;
  int v = p.start;
  while (mask != 0) {
    for (std::size_t u = 0; u < t.others.size(); ++u) {
      const std::uint32_t bit = 1u << u;
      if (!(mask & bit)) continue;
      const int node = t.others[u];
      if (p.dist.at(v, node) + t.at(mask ^ bit, node) == t.at(mask, v)) {
        r.order.push_back(node);
        mask ^= bit;
        v = node;
        break;
      }
    }
  }
  return r;
}

namespace {

// Minimum spanning tree over all nodes (Prim, smallest-index tie break).
std::vector<std::pair<int, int>> prim_mst(const DistanceMatrix& d) {
  const int n = static_cast<int>(d.n);
  std::vector<double> key(n, kInf);
  std::vector<int> parent(n, -1);
  std::vector<bool> in_tree(n, false);
  key[0] = 0.0;
  std::vector<std::pair<int, int>> edges;
  for (int iter = 0; iter < n; ++iter) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!in_tree[v] && (best == -1 || key[v] < key[best])) best = v;
    }
    in_tree[best] = true;
    if (parent[best] >= 0) edges.emplace_back(parent[best], best);
    for (int v = 0; v < n; ++v) {
      if (!in_tree[v] && d.at(best, v) < key[v]) {
        key[v] = d.at(best, v);
        parent[v] = best;
      }
    }
  }
  return edges;
}

// Exact minimum-weight perfect matching on the odd-degree vertices by
// subset DP; greedy fallback once the subset table would be too large.
std::vector<std::pair<int, int>> odd_vertex_matching(const DistanceMatrix& d,
                                                    const std::vector<int>& odd) {
  const int k = static_cast<int>(odd.size());
  std::vector<std::pair<int, int>> pairs;
  if (k == 0) return pairs;
  if (k > 22) {
    std::vector<bool> used(k, false);
    for (int i = 0; i < k; ++i) {
      if (used[i]) continue;
      int best = -1;
      for (int j = i + 1; j < k; ++j) {
        if (!used[j] && (best == -1 || d.at(odd[i], odd[j]) < d.at(odd[i], odd[best]))) best = j;
      }
      used[i] = used[best] = true;
      pairs.emplace_back(odd[i], odd[best]);
    }
    return pairs;
  }
  const std::uint32_t full = (1u << k) - 1;
  std::vector<double> best(full + 1, kInf);
  best[0] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    const int i = std::countr_zero(mask);
    for (int j = i + 1; j < k; ++j) {
      const std::uint32_t bit = (1u << i) | (1u << j);
      if ((mask & (1u << j)) == 0) continue;
      const double cand = d.at(odd[i], odd[j]) + best[mask ^ bit];
      if (cand < best[mask]) best[mask] = cand;
    }
  }
  std::uint32_t mask = full;
  while (mask != 0) {
    const int i = std::countr_zero(mask);
    for (int j = i + 1; j < k; ++j) {
      const std::uint32_t bit = (1u << i) | (1u << j);
      if ((mask & (1u << j)) == 0) continue;
      if (d.at(odd[i], odd[j]) + best[mask ^ bit] == best[mask]) {
        pairs.emplace_back(odd[i], odd[j]);
        mask ^= bit;
        break;
      }
    }
  }
  return pairs;
}

// Hamiltonian cycle through all nodes via MST + matching + Euler shortcut.
std::vector<int> christofides_cycle(const RouteProblem& p) {
  const int n = static_cast<int>(p.dist.n);
  if (n == 1) return {p.start};
  auto edges = prim_mst(p.dist);
  std::vector<int> degree(n, 0);
  for (const auto& [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  std::vector<int> odd;
  for (int v = 0; v < n; ++v) {
    if (degree[v] % 2 == 1) odd.push_back(v);
  }
  for (const auto& pr : odd_vertex_matching(p.dist, odd)) edges.push_back(pr);

  // Eulerian circuit (Hierholzer), neighbors consumed in sorted order.
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, static_cast<int>(e));
    adj[edges[e].second].emplace_back(edges[e].first, static_cast<int>(e));
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  std::vector<std::size_t> next(n, 0);
  std::vector<bool> used(edges.size(), false);
  std::vector<int> stack{p.start};
  std::vector<int> walk;
  while (!stack.empty()) {
    const int v = stack.back();
    bool advanced = false;
    while (next[v] < adj[v].size()) {
      const auto [w, e] = adj[v][next[v]];
      if (used[e]) {
        ++next[v];
        continue;
      }
      used[e] = true;
      ++next[v];
      stack.push_back(w);
      advanced = true;
      break;
    }
    if (!advanced) {
      walk.push_back(v);
      stack.pop_back();
    }
  }
  std::reverse(walk.begin(), walk.end());

  std::vector<int> cycle;
  std::vector<bool> seen(n, false);
  for (int v : walk) {
    if (!seen[v]) {
      seen[v] = true;
      cycle.push_back(v);
    }
  }
  return cycle;  // starts at p.start, implicit closing edge back to start
}

}  // namespace

Route christofides_open_path(const RouteProblem& p) {
  check_problem(p);
  const auto cycle = christofides_cycle(p);
  Route r;
  r.order = cycle;
  r.length = route_length(p.dist, r.order);
  return r;
}

double cycle_length(const RouteProblem& p, RouteSolver solver) {
  check_problem(p);
  const int n = static_cast<int>(p.dist.n);
  if (n == 1) return 0.0;
  if (solver == RouteSolver::christofides) {
    const auto cycle = christofides_cycle(p);
    return route_length(p.dist, cycle) + p.dist.at(cycle.back(), cycle.front());
  }
  if (n > kExactRouteNodeLimit) {
    throw SizeLimitError("exact route solver admits at most 21 nodes");
  }
  // Forward DP over end nodes for the optimal closed tour.
  std::vector<int> others;
  for (int v = 0; v < n; ++v) {
    if (v != p.start) others.push_back(v);
  }
  const int k = static_cast<int>(others.size());
  const std::uint32_t full = (1u << k) - 1;
  std::vector<double> f((static_cast<std::size_t>(full) + 1) * k, kInf);
  auto idx = [&](std::uint32_t mask, int v) { return static_cast<std::size_t>(mask) * k + v; };
  for (int v = 0; v < k; ++v) f[idx(1u << v, v)] = p.dist.at(p.start, others[v]);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int v = 0; v < k; ++v) {
      if (!(mask & (1u << v))) continue;
      const double cur = f[idx(mask, v)];
      if (cur == kInf) continue;
      for (int u = 0; u < k; ++u) {
        if (mask & (1u << u)) continue;
        const std::uint32_t nmask = mask | (1u << u);
        const double cand = cur + p.dist.at(others[v], others[u]);
        if (cand < f[idx(nmask, u)]) f[idx(nmask, u)] = cand;
      }
    }
  }
  double best = kInf;
  for (int v = 0; v < k; ++v) {
    best = std::min(best, f[idx(full, v)] + p.dist.at(others[v], p.start));
  }
  return best;
}

}  // namespace mcs

#include "mcs/fpmt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "mcs/errors.hpp"

namespace mcs {

bool FpmtInstance::operator==(const FpmtInstance& o) const {
  if (quota != o.quota || participants.size() != o.participants.size() ||
      tasks.size() != o.tasks.size()) {
    return false;
  }
  for (std::size_t i = 0; i < participants.size(); ++i) {
    if (participants[i].id != o.participants[i].id ||
        !(participants[i].loc == o.participants[i].loc)) {
      return false;
    }
  }
  for (std::size_t j = 0; j < tasks.size(); ++j) {
    if (tasks[j].id != o.tasks[j].id || !(tasks[j].loc == o.tasks[j].loc) ||
        tasks[j].capacity != o.tasks[j].capacity) {
      return false;
    }
  }
  return true;
}

void validate(const FpmtInstance& inst) {
  if (inst.quota < 1) {
    throw ParameterError("quota must be at least 1");
  }
  if (inst.quota > static_cast<int>(inst.tasks.size())) {
    throw ParameterError("quota exceeds the number of tasks");
  }
  std::set<int> ids;
  for (const auto& p : inst.participants) {
    validate(p.loc);
    if (!ids.insert(p.id).second) {
      throw ParameterError("duplicate participant id");
    }
  }
  ids.clear();
  for (const auto& t : inst.tasks) {
    validate(t.loc);
    if (t.capacity < 1) {
      throw ParameterError("task capacity must be at least 1");
    }
    if (!ids.insert(t.id).second) {
      throw ParameterError("duplicate task id");
    }
  }
}

namespace {

// C(n, q) clamped at `cap` to avoid overflow.
std::size_t binomial_clamped(std::size_t n, std::size_t q, std::size_t cap) {
  if (q > n) return 0;
  q = std::min(q, n - q);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= q; ++i) {
    if (result > cap) return cap + 1;
    result = result * (n - q + i) / i;
  }
  return std::min(result, cap + 1);
}

// Precomputed distances shared by every route subproblem of one instance.
struct DistanceCache {
  std::vector<std::vector<double>> task_task;         // n x n
  std::vector<std::vector<double>> participant_task;  // m x n
};

DistanceCache build_cache(const FpmtInstance& inst) {
  const std::size_t m = inst.participants.size();
  const std::size_t n = inst.tasks.size();
  DistanceCache c;
  c.task_task.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(inst.tasks[i].loc, inst.tasks[j].loc);
      c.task_task[i][j] = d;
      c.task_task[j][i] = d;
    }
  }
  c.participant_task.assign(m, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      c.participant_task[i][j] = distance(inst.participants[i].loc, inst.tasks[j].loc);
    }
  }
  return c;
}

CandidateSet make_candidate(const DistanceCache& cache, int participant,
                            std::vector<int> tasks, RouteSolverChoice choice) {
  const int q = static_cast<int>(tasks.size());
  RouteProblem rp;
  rp.start = 0;
  rp.dist.n = q + 1;
  rp.dist.entries.assign(static_cast<std::size_t>(q + 1) * (q + 1), 0.0);
  for (int a = 0; a < q; ++a) {
    const double d = cache.participant_task[participant][tasks[a]];
    rp.dist.at(0, a + 1) = d;
    rp.dist.at(a + 1, 0) = d;
    for (int b = a + 1; b < q; ++b) {
      const double dd = cache.task_task[tasks[a]][tasks[b]];
      rp.dist.at(a + 1, b + 1) = dd;
      rp.dist.at(b + 1, a + 1) = dd;
    }
  }
  const bool use_exact = choice == RouteSolverChoice::exact ||
                         (choice == RouteSolverChoice::auto_select &&
                          q + 1 <= kExactRouteNodeLimit);
  const Route r = use_exact ? exact_open_path(rp) : christofides_open_path(rp);
  CandidateSet cs;
  cs.cost = r.length;
  for (std::size_t i = 1; i < r.order.size(); ++i) {
    cs.route.push_back(tasks[r.order[i] - 1]);
  }
  cs.tasks = std::move(tasks);
  return cs;
}

// Visits q-subsets of `pool` in lexicographic order.
template <typename F>
void for_each_combination(const std::vector<int>& pool, int q, F&& f) {
  const int n = static_cast<int>(pool.size());
  std::vector<int> pick(q);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    std::vector<int> combo(q);
    for (int i = 0; i < q; ++i) combo[i] = pool[pick[i]];
    f(std::move(combo));
    int i = q - 1;
    while (i >= 0 && pick[i] == n - q + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < q; ++j) pick[j] = pick[j - 1] + 1;
  }
}

TaskSetFamily enumerate_from_pools(const FpmtInstance& inst,
                                   const std::vector<std::vector<int>>& pools,
                                   const EnumerationOptions& opts) {
  const DistanceCache cache = build_cache(inst);
  TaskSetFamily family;
  family.per_participant.resize(inst.participants.size());
  for (std::size_t i = 0; i < pools.size(); ++i) {
    for_each_combination(pools[i], inst.quota, [&](std::vector<int> combo) {
      family.per_participant[i].push_back(
          make_candidate(cache, static_cast<int>(i), std::move(combo), opts.solver));
    });
  }
  return family;
}

}  // namespace

TaskSetFamily enumerate_full(const FpmtInstance& inst,
                             const EnumerationOptions& opts) {
  validate(inst);
  const std::size_t n = inst.tasks.size();
  const std::size_t per = binomial_clamped(n, inst.quota, opts.route_budget);
  if (per * std::max<std::size_t>(1, inst.participants.size()) > opts.route_budget) {
    throw EnumerationBudgetError(
        "full enumeration exceeds the route budget; use k-nearest pruning");
  }
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  return enumerate_from_pools(
      inst, std::vector<std::vector<int>>(inst.participants.size(), all), opts);
}

TaskSetFamily enumerate_pruned(const FpmtInstance& inst, int k,
                               const EnumerationOptions& opts) {
  validate(inst);
  const int n = static_cast<int>(inst.tasks.size());
  if (k < inst.quota || k > n) {
    throw ParameterError("k must lie in [quota, task count]");
  }
  const std::size_t per = binomial_clamped(k, inst.quota, opts.route_budget);
  if (per * std::max<std::size_t>(1, inst.participants.size()) > opts.route_budget) {
    throw EnumerationBudgetError("pruned enumeration exceeds the route budget");
  }
  std::vector<std::vector<int>> pools(inst.participants.size());
  for (std::size_t i = 0; i < inst.participants.size(); ++i) {
    std::vector<std::pair<double, int>> by_dist;
    for (int j = 0; j < n; ++j) {
      by_dist.emplace_back(distance(inst.participants[i].loc, inst.tasks[j].loc), j);
    }
    std::sort(by_dist.begin(), by_dist.end());
    for (int j = 0; j < k; ++j) pools[i].push_back(by_dist[j].second);
    std::sort(pools[i].begin(), pools[i].end());
  }
  return enumerate_from_pools(inst, pools, opts);
}

FlowNetwork build_network(const FpmtInstance& inst, const TaskSetFamily& family) {
  validate(inst);
  if (family.per_participant.size() != inst.participants.size()) {
    throw ParameterError("family size does not match participant count");
  }
  const int m = static_cast<int>(inst.participants.size());
  const int n = static_cast<int>(inst.tasks.size());
  std::map<std::vector<int>, int> set_node;  // task combination -> node id
  for (const auto& sets : family.per_participant) {
    for (const auto& cs : sets) {
      set_node.try_emplace(cs.tasks, 0);
    }
  }
  int next = 1 + m;
  for (auto& [tasks, id] : set_node) id = next++;
  const int task_base = next;
  const int sink = task_base + n;

  FlowNetwork net;
  net.nodes = sink + 1;
  net.source = 0;
  net.sink = sink;
  for (int i = 0; i < m; ++i) {
    net.arcs.push_back({0, 1 + i, inst.quota, 0.0});
  }
  for (int i = 0; i < m; ++i) {
    for (const auto& cs : family.per_participant[i]) {
      net.arcs.push_back({1 + i, set_node.at(cs.tasks), inst.quota, cs.cost});
    }
  }
  for (const auto& [tasks, id] : set_node) {
    for (int t : tasks) {
      net.arcs.push_back({id, task_base + t, 1, 0.0});
    }
  }
  for (int j = 0; j < n; ++j) {
    net.arcs.push_back({task_base + j, sink, inst.tasks[j].capacity, 0.0});
  }
  return net;
}

namespace {

FpmtAssignment finalize(const FpmtInstance& inst,
                        std::vector<ParticipantAssignment> entries) {
  FpmtAssignment a;
  a.performers.assign(inst.tasks.size(), {});
  for (const auto& e : entries) {
    a.accomplished += static_cast<std::int64_t>(e.route.size());
    a.total_distance += e.distance;
    for (int t : e.route) a.performers[t].push_back(e.participant);
  }
  for (auto& list : a.performers) std::sort(list.begin(), list.end());
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.participant < y.participant; });
  a.assigned = std::move(entries);
  return a;
}

}  // namespace

namespace {

// Shared search state for block selection: residual task capacities, the
// globally used task sets, and which participants are already assigned.
struct BlockState {
  const TaskSetFamily* family;
  std::vector<int> residual;
  std::set<std::vector<int>> used_sets;
  std::vector<bool> assigned;

  bool feasible(const CandidateSet& cs) const {
    if (used_sets.count(cs.tasks)) return false;
    return std::none_of(cs.tasks.begin(), cs.tasks.end(),
                        [&](int t) { return residual[t] < 1; });
  }
  void apply(std::size_t participant, const CandidateSet& cs) {
    assigned[participant] = true;
    used_sets.insert(cs.tasks);
    for (int t : cs.tasks) --residual[t];
  }
  void undo(std::size_t participant, const CandidateSet& cs) {
    assigned[participant] = false;
    used_sets.erase(cs.tasks);
    for (int t : cs.tasks) ++residual[t];
  }
};

// Assigns every unassigned participant its first feasible set in id order.
// Returns the number of participants placed; exact when it places them all.
int greedy_completion(BlockState& st, std::vector<std::pair<std::size_t, const CandidateSet*>>* picks) {
  int placed = 0;
  for (std::size_t i = 0; i < st.assigned.size(); ++i) {
    if (st.assigned[i]) continue;
    for (const auto& cs : st.family->per_participant[i]) {
      if (!st.feasible(cs)) continue;
      st.apply(i, cs);
      picks->push_back({i, &cs});
      ++placed;
      break;
    }
  }
  for (auto it = picks->rbegin(); it != picks->rend(); ++it) {
    st.undo(it->first, *it->second);
  }
  return placed;
}

void max_blocks_dfs(BlockState& st, std::size_t i, int placed, int* best) {
  int remaining = 0;
  for (std::size_t p = i; p < st.assigned.size(); ++p) {
    if (!st.assigned[p]) ++remaining;
  }
  if (placed + remaining <= *best) return;  // cannot improve
  if (i == st.assigned.size()) {
    *best = std::max(*best, placed);
    return;
  }
  if (st.assigned[i]) {
    max_blocks_dfs(st, i + 1, placed, best);
    return;
  }
  for (const auto& cs : st.family->per_participant[i]) {
    if (!st.feasible(cs)) continue;
    st.apply(i, cs);
    max_blocks_dfs(st, i + 1, placed + 1, best);
    st.undo(i, cs);
    if (*best == placed + remaining) return;  // already optimal below here
  }
  max_blocks_dfs(st, i + 1, placed, best);
}

// Exhaustive count-then-cost search, affordable only at desk scale. Visits
// participants in id order, sets in family (lexicographic) order, so the
// first optimum found is the deterministic tie-break winner.
struct ExactSearch {
  BlockState* st;
  std::vector<double> min_set_cost;  // static per-participant lower bound
  int best_count = -1;
  double best_cost = 0.0;
  std::vector<const CandidateSet*> best_choice;
  std::vector<const CandidateSet*> choice;

  void dfs(std::size_t i, int placed, double cost) {
    int remaining = 0;
    double cost_bound = 0.0;
    for (std::size_t p = i; p < st->assigned.size(); ++p) {
      ++remaining;
      cost_bound += min_set_cost[p];
    }
    if (placed + remaining < best_count) return;
    if (placed + remaining == best_count && cost + cost_bound >= best_cost) {
      return;
    }
    if (i == st->assigned.size()) {
      if (placed > best_count ||
          (placed == best_count && cost < best_cost - 1e-12)) {
        best_count = placed;
        best_cost = cost;
        best_choice = choice;
      }
      return;
    }
    for (const auto& cs : st->family->per_participant[i]) {
      if (!st->feasible(cs)) continue;
      st->apply(i, cs);
      choice[i] = &cs;
      dfs(i + 1, placed + 1, cost + cs.cost);
      choice[i] = nullptr;
      st->undo(i, cs);
    }
    dfs(i + 1, placed, cost);  // leave participant i unassigned
  }
};

// Maximum number of additional full blocks placeable from this state. The
// cheap path: when first-feasible greedy places every remaining participant
// that is trivially optimal; otherwise fall back to exhaustive search.
int max_blocks(BlockState& st) {
  int remaining = 0;
  for (std::size_t i = 0; i < st.assigned.size(); ++i) {
    if (!st.assigned[i]) ++remaining;
  }
  std::vector<std::pair<std::size_t, const CandidateSet*>> picks;
  const int greedy = greedy_completion(st, &picks);
  if (greedy == remaining) return greedy;
  int best = greedy;
  max_blocks_dfs(st, 0, 0, &best);
  return best;
}

}  // namespace

FpmtAssignment solve_mt_mcmf(const FpmtInstance& inst, const TaskSetFamily& family) {
  validate(inst);
  if (family.per_participant.size() != inst.participants.size()) {
    throw ParameterError("family size does not match participant count");
  }
  std::size_t total_sets = 0;
  for (const auto& sets : family.per_participant) total_sets += sets.size();
  if (total_sets == 0) {
    throw ParameterError("task-set family holds no candidate sets");
  }

  // Candidate blocks ordered by (route cost, participant, task set): the
  // augmentation order of the min-cost max-flow selection.
  struct Block {
    double cost;
    int participant;
    const CandidateSet* set;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < family.per_participant.size(); ++i) {
    for (const auto& cs : family.per_participant[i]) {
      blocks.push_back({cs.cost, static_cast<int>(i), &cs});
    }
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.participant != b.participant) return a.participant < b.participant;
    return a.set->tasks < b.set->tasks;
  });

  BlockState st;
  st.family = &family;
  st.residual.resize(inst.tasks.size());
  for (std::size_t j = 0; j < inst.tasks.size(); ++j) {
    st.residual[j] = inst.tasks[j].capacity;
  }
  st.assigned.assign(inst.participants.size(), false);

  std::vector<ParticipantAssignment> entries;

  // Desk scale: blocks are few enough to pick each augmentation from an
  // exhaustive count-then-cost completion, closing the greedy selection's
  // distance gap entirely.
  if (inst.participants.size() <= 4 && total_sets <= 200) {
    ExactSearch ex;
    ex.st = &st;
    ex.choice.assign(inst.participants.size(), nullptr);
    for (const auto& sets : family.per_participant) {
      double lo = 0.0;
      if (!sets.empty()) {
        lo = sets.front().cost;
        for (const auto& cs : sets) lo = std::min(lo, cs.cost);
      }
      ex.min_set_cost.push_back(lo);
    }
    ex.dfs(0, 0, 0.0);
    for (std::size_t i = 0; i < ex.best_choice.size(); ++i) {
      const CandidateSet* cs = ex.best_choice[i];
      if (!cs) continue;
      entries.push_back({static_cast<int>(i), cs->route, cs->cost, true});
    }
    return finalize(inst, std::move(entries));
  }
  // Each round augments by one q-block: the cheapest feasible block that
  // still lies on some maximum flow, i.e. whose assignment keeps the
  // remaining maximum block count intact. No assigned block is ever undone.
  for (;;) {
    const int target = max_blocks(st);
    if (target == 0) break;
    const Block* chosen = nullptr;
    for (const Block& b : blocks) {
      if (st.assigned[b.participant] || !st.feasible(*b.set)) continue;
      st.apply(b.participant, *b.set);
      const bool keeps_max = max_blocks(st) == target - 1;
      if (keeps_max) {
        chosen = &b;
        break;
      }
      st.undo(b.participant, *b.set);
    }
    if (!chosen) break;  // unreachable: some block realizes the maximum
    entries.push_back(
        {chosen->participant, chosen->set->route, chosen->set->cost, true});
  }
  return finalize(inst, std::move(entries));
}

FpmtAssignment solve_mtp_mcmf(const FpmtInstance& inst, int k,
                              const EnumerationOptions& opts) {
  return solve_mt_mcmf(inst, enumerate_pruned(inst, k, opts));
}

FpmtAssignment solve_mt_grdpt(const FpmtInstance& inst) {
  validate(inst);
  std::vector<int> residual(inst.tasks.size());
  for (std::size_t j = 0; j < inst.tasks.size(); ++j) {
    residual[j] = inst.tasks[j].capacity;
  }
  std::vector<ParticipantAssignment> entries;
  for (std::size_t i = 0; i < inst.participants.size(); ++i) {
    ParticipantAssignment e;
    e.participant = static_cast<int>(i);
    Location at = inst.participants[i].loc;
    std::vector<bool> visited(inst.tasks.size(), false);
    for (int step = 0; step < inst.quota; ++step) {
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < inst.tasks.size(); ++j) {
        if (residual[j] < 1 || visited[j]) continue;
        const double d = distance(at, inst.tasks[j].loc);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(j);
        }
      }
      if (best < 0) break;
      visited[best] = true;
      --residual[best];
      e.route.push_back(best);
      e.distance += best_d;
      at = inst.tasks[best].loc;
    }
    e.complete = static_cast<int>(e.route.size()) == inst.quota;
    if (!e.route.empty()) entries.push_back(std::move(e));
  }
  return finalize(inst, std::move(entries));
}

namespace {

struct OracleState {
  const FpmtInstance* inst;
  const TaskSetFamily* family;
  std::vector<int> residual;
  std::set<std::vector<int>> used_sets;
  std::vector<int> choice;  // per participant: set index or -1
  std::int64_t best_count = -1;
  double best_distance = 0.0;
  std::vector<int> best_choice;
};

void oracle_dfs(OracleState& st, std::size_t i, std::int64_t count, double dist) {
  if (i == st.inst->participants.size()) {
    if (count > st.best_count ||
        (count == st.best_count && dist < st.best_distance - 1e-12)) {
      st.best_count = count;
      st.best_distance = dist;
      st.best_choice = st.choice;
    }
    return;
  }
  const auto& sets = st.family->per_participant[i];
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const CandidateSet& cs = sets[s];
    if (st.used_sets.count(cs.tasks)) continue;
    if (std::any_of(cs.tasks.begin(), cs.tasks.end(),
                    [&](int t) { return st.residual[t] < 1; })) {
      continue;
    }
    for (int t : cs.tasks) --st.residual[t];
    st.used_sets.insert(cs.tasks);
    st.choice[i] = static_cast<int>(s);
    oracle_dfs(st, i + 1, count + st.inst->quota, dist + cs.cost);
    st.choice[i] = -1;
    st.used_sets.erase(cs.tasks);
    for (int t : cs.tasks) ++st.residual[t];
  }
  oracle_dfs(st, i + 1, count, dist);  // leave participant unassigned
}

}  // namespace

FpmtAssignment exact_oracle(const FpmtInstance& inst, const TaskSetFamily& family) {
  validate(inst);
  if (inst.participants.size() > 5) {
    throw SizeLimitError("exact oracle admits at most 5 participants");
  }
  for (const auto& sets : family.per_participant) {
    if (sets.size() > 30) {
      throw SizeLimitError("exact oracle admits at most 30 candidate sets per participant");
    }
  }
  OracleState st;
  st.inst = &inst;
  st.family = &family;
  st.residual.resize(inst.tasks.size());
  for (std::size_t j = 0; j < inst.tasks.size(); ++j) {
    st.residual[j] = inst.tasks[j].capacity;
  }
  st.choice.assign(inst.participants.size(), -1);
  oracle_dfs(st, 0, 0, 0.0);

  std::vector<ParticipantAssignment> entries;
  for (std::size_t i = 0; i < st.best_choice.size(); ++i) {
    const int s = st.best_choice[i];
    if (s < 0) continue;
    const CandidateSet& cs = family.per_participant[i][s];
    entries.push_back({static_cast<int>(i), cs.route, cs.cost, true});
  }
  return finalize(inst, std::move(entries));
}

FpmtMetrics assignment_metrics(const FpmtAssignment& a,
                               double speed_meters_per_minute) {
  if (speed_meters_per_minute <= 0.0) {
    throw ParameterError("speed must be positive");
  }
  FpmtMetrics m;
  m.total_distance = a.total_distance;
  m.accomplished = a.accomplished;
  for (const auto& e : a.assigned) {
    m.completion_minutes.push_back(e.distance / speed_meters_per_minute);
  }
  if (!m.completion_minutes.empty()) {
    m.mean_completion_minutes =
        std::accumulate(m.completion_minutes.begin(), m.completion_minutes.end(), 0.0) /
        static_cast<double>(m.completion_minutes.size());
  }
  if (!a.performers.empty()) {
    double mean = 0.0;
    for (const auto& list : a.performers) mean += static_cast<double>(list.size());
    mean /= static_cast<double>(a.performers.size());
    double var = 0.0;
    for (const auto& list : a.performers) {
      const double d = static_cast<double>(list.size()) - mean;
      var += d * d;
    }
    m.performer_count_variance = var / static_cast<double>(a.performers.size());
  }
  return m;
}

}  // namespace mcs

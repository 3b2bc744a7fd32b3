#include "mcs/mpft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mcs/errors.hpp"
#include "mcs/flow.hpp"
#include "mcs/lp.hpp"

namespace mcs {

void validate(const MpftInstance& inst) {
  const std::size_t m = inst.areas.size();
  const std::size_t n = inst.tasks.size();
  if (m == 0 || n == 0) {
    throw ParameterError("instance needs at least one area and one task");
  }
  if (inst.dist.size() != m) {
    throw ParameterError("distance matrix row count does not match areas");
  }
  std::int64_t supply = 0, demand = 0;
  for (const auto& a : inst.areas) {
    if (a.population < 1) throw ParameterError("area population must be positive");
    if (a.incentive <= 0.0) throw ParameterError("area incentive must be positive");
    supply += a.population;
  }
  for (const auto& t : inst.tasks) {
    if (t.demand < 1) throw ParameterError("task demand must be positive");
    demand += t.demand;
  }
  for (const auto& row : inst.dist) {
    if (row.size() != n) {
      throw ParameterError("distance matrix column count does not match tasks");
    }
    for (double d : row) {
      if (!(d >= 0.0)) throw ParameterError("distances must be nonnegative");
    }
  }
  if (supply < demand) {
    throw InfeasibleError("total area population is below total task demand");
  }
}

namespace {

double incentive_of(const MpftInstance& inst,
                    const std::vector<std::vector<std::int64_t>>& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < inst.areas.size(); ++i) {
    std::int64_t units = 0;
    for (std::int64_t v : x[i]) units += v;
    total += inst.areas[i].incentive * static_cast<double>(units);
  }
  return total;
}

double distance_of(const MpftInstance& inst,
                   const std::vector<std::vector<std::int64_t>>& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < inst.areas.size(); ++i) {
    for (std::size_t j = 0; j < inst.tasks.size(); ++j) {
      total += inst.dist[i][j] * static_cast<double>(x[i][j]);
    }
  }
  return total;
}

AllocationMatrix make_allocation(const MpftInstance& inst,
                                 std::vector<std::vector<std::int64_t>> x) {
  AllocationMatrix a;
  a.incentive = incentive_of(inst, x);
  a.distance = distance_of(inst, x);
  a.x = std::move(x);
  return a;
}

// Exact transportation solve with an arbitrary per-unit cost on each
// (area, task) pair; integral by flow integrality.
AllocationMatrix transportation_solve(
    const MpftInstance& inst, const std::vector<std::vector<double>>& unit_cost) {
  const int m = static_cast<int>(inst.areas.size());
  const int n = static_cast<int>(inst.tasks.size());
  FlowNetwork net;
  net.source = 0;
  net.sink = 1 + m + n;
  net.nodes = net.sink + 1;
  std::int64_t demand = 0;
  for (int i = 0; i < m; ++i) {
    net.arcs.push_back({0, 1 + i, inst.areas[i].population, 0.0});
  }
  std::vector<std::size_t> xy_arc(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      xy_arc[i * n + j] = net.arcs.size();
      net.arcs.push_back({1 + i, 1 + m + j,
                          std::min<std::int64_t>(inst.areas[i].population,
                                                 inst.tasks[j].demand),
                          unit_cost[i][j]});
    }
  }
  for (int j = 0; j < n; ++j) {
    net.arcs.push_back({1 + m + j, net.sink, inst.tasks[j].demand, 0.0});
    demand += inst.tasks[j].demand;
  }
  const Flow f = min_cost_flow(net, demand);
  std::vector<std::vector<std::int64_t>> x(m, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      x[i][j] = f.arc_flow[xy_arc[i * n + j]];
    }
  }
  return make_allocation(inst, std::move(x));
}

// ILP over x_ij with the transportation rows plus optional side constraints.
AllocationMatrix side_constrained_ilp(
    const MpftInstance& inst, const std::vector<std::vector<double>>& unit_cost,
    const std::vector<ConstraintRow>& extra_rows) {
  const int m = static_cast<int>(inst.areas.size());
  const int n = static_cast<int>(inst.tasks.size());
  const int nv = m * n;
  LinearProgram lp;
  lp.objective.resize(nv);
  lp.lower.assign(nv, 0.0);
  lp.upper.resize(nv);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      lp.objective[i * n + j] = unit_cost[i][j];
      lp.upper[i * n + j] = static_cast<double>(
          std::min<std::int64_t>(inst.areas[i].population, inst.tasks[j].demand));
    }
  }
  for (int i = 0; i < m; ++i) {
    ConstraintRow row;
    row.coeffs.assign(nv, 0.0);
    for (int j = 0; j < n; ++j) row.coeffs[i * n + j] = 1.0;
    row.rel = Relation::le;
    row.rhs = static_cast<double>(inst.areas[i].population);
    lp.rows.push_back(std::move(row));
  }
  for (int j = 0; j < n; ++j) {
    ConstraintRow row;
    row.coeffs.assign(nv, 0.0);
    for (int i = 0; i < m; ++i) row.coeffs[i * n + j] = 1.0;
    row.rel = Relation::eq;
    row.rhs = static_cast<double>(inst.tasks[j].demand);
    lp.rows.push_back(std::move(row));
  }
  for (const auto& r : extra_rows) lp.rows.push_back(r);

  std::vector<int> integer_vars(nv);
  std::iota(integer_vars.begin(), integer_vars.end(), 0);
  const MilpSolution sol = branch_and_bound(lp, integer_vars);
  if (sol.status != MilpStatus::optimal) {
    throw InfeasibleError("no integral allocation satisfies the constraints");
  }
  std::vector<std::vector<std::int64_t>> x(m, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      x[i][j] = static_cast<std::int64_t>(std::llround(sol.values[i * n + j]));
    }
  }
  return make_allocation(inst, std::move(x));
}

std::vector<std::vector<double>> incentive_costs(const MpftInstance& inst) {
  std::vector<std::vector<double>> c(inst.areas.size(),
                                     std::vector<double>(inst.tasks.size()));
  for (std::size_t i = 0; i < inst.areas.size(); ++i) {
    std::fill(c[i].begin(), c[i].end(), inst.areas[i].incentive);
  }
  return c;
}

ConstraintRow incentive_row(const MpftInstance& inst, double bound) {
  const std::size_t n = inst.tasks.size();
  ConstraintRow row;
  row.coeffs.resize(inst.areas.size() * n);
  for (std::size_t i = 0; i < inst.areas.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      row.coeffs[i * n + j] = inst.areas[i].incentive;
    }
  }
  row.rel = Relation::le;
  row.rhs = bound;
  return row;
}

ConstraintRow distance_row(const MpftInstance& inst, double bound) {
  const std::size_t n = inst.tasks.size();
  ConstraintRow row;
  row.coeffs.resize(inst.areas.size() * n);
  for (std::size_t i = 0; i < inst.areas.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      row.coeffs[i * n + j] = inst.dist[i][j];
    }
  }
  row.rel = Relation::le;
  row.rhs = bound;
  return row;
}

double slack(double v) { return 1e-9 * std::max(1.0, std::abs(v)); }

struct BoundsDetail {
  ObjectiveBounds b;
  AllocationMatrix at_c_min;  // incentive-optimal, distance tie-broken
  AllocationMatrix at_d_min;  // distance-optimal, incentive tie-broken
};

BoundsDetail compute_bounds_detail(const MpftInstance& inst) {
  BoundsDetail d;
  const AllocationMatrix c_opt = transportation_solve(inst, incentive_costs(inst));
  d.b.c_min = c_opt.incentive;
  d.at_c_min =
      side_constrained_ilp(inst, inst.dist,
                           {incentive_row(inst, d.b.c_min + slack(d.b.c_min))});
  d.b.d_max = d.at_c_min.distance;

  const AllocationMatrix d_opt = transportation_solve(inst, inst.dist);
  d.b.d_min = d_opt.distance;
  d.at_d_min =
      side_constrained_ilp(inst, incentive_costs(inst),
                           {distance_row(inst, d.b.d_min + slack(d.b.d_min))});
  d.b.c_max = d.at_d_min.incentive;
  return d;
}

void check_weights(double k1, double k2) {
  if (k1 < 0.0 || k2 < 0.0 || k1 + k2 <= 0.0) {
    throw ParameterError("weights must be nonnegative with positive sum");
  }
}

// Scalarized per-unit cost for (area i, task j) under the payoff-table
// normalization; a degenerate span contributes nothing.
std::vector<std::vector<double>> scalarized_costs(const MpftInstance& inst,
                                                  const ObjectiveBounds& b,
                                                  double k1, double k2) {
  const double wc = b.c_max > b.c_min ? k1 / (b.c_max - b.c_min) : 0.0;
  const double wd = b.d_max > b.d_min ? k2 / (b.d_max - b.d_min) : 0.0;
  std::vector<std::vector<double>> c(inst.areas.size(),
                                     std::vector<double>(inst.tasks.size()));
  for (std::size_t i = 0; i < inst.areas.size(); ++i) {
    for (std::size_t j = 0; j < inst.tasks.size(); ++j) {
      c[i][j] = wc * inst.areas[i].incentive + wd * inst.dist[i][j];
    }
  }
  return c;
}

AllocationMatrix solve_w_ilp_impl(const MpftInstance& inst, double k1, double k2,
                                  const BoundsDetail& detail) {
  if (k2 == 0.0) return detail.at_c_min;
  if (k1 == 0.0) return detail.at_d_min;
  return transportation_solve(inst, scalarized_costs(inst, detail.b, k1, k2));
}

AllocationMatrix solve_c_ilp_impl(const MpftInstance& inst, double budget,
                                  double c_min) {
  if (budget < c_min - slack(c_min)) {
    throw InfeasibleBudgetError(
        "incentive budget below the minimum attainable incentive " +
            std::to_string(c_min),
        c_min);
  }
  return side_constrained_ilp(inst, inst.dist,
                              {incentive_row(inst, budget + slack(budget))});
}

}  // namespace

ObjectiveBounds compute_bounds(const MpftInstance& inst) {
  validate(inst);
  return compute_bounds_detail(inst).b;
}

AllocationMatrix solve_w_ilp(const MpftInstance& inst, double k1, double k2) {
  validate(inst);
  check_weights(k1, k2);
  return solve_w_ilp_impl(inst, k1, k2, compute_bounds_detail(inst));
}

AllocationMatrix solve_c_ilp(const MpftInstance& inst, double budget) {
  validate(inst);
  const AllocationMatrix c_opt = transportation_solve(inst, incentive_costs(inst));
  return solve_c_ilp_impl(inst, budget, c_opt.incentive);
}

AllocationMatrix solve_w_grd(const MpftInstance& inst, double k1, double k2) {
  validate(inst);
  check_weights(k1, k2);
  const BoundsDetail detail = compute_bounds_detail(inst);
  const auto cost = scalarized_costs(inst, detail.b, k1, k2);
  const int m = static_cast<int>(inst.areas.size());
  const int n = static_cast<int>(inst.tasks.size());
  std::vector<std::int64_t> cap(m), need(n);
  for (int i = 0; i < m; ++i) cap[i] = inst.areas[i].population;
  std::int64_t remaining = 0;
  for (int j = 0; j < n; ++j) {
    need[j] = inst.tasks[j].demand;
    remaining += need[j];
  }
  std::vector<std::vector<std::int64_t>> x(m, std::vector<std::int64_t>(n, 0));
  while (remaining > 0) {
    int bi = -1, bj = -1;
    for (int i = 0; i < m; ++i) {
      if (cap[i] < 1) continue;
      for (int j = 0; j < n; ++j) {
        if (need[j] < 1) continue;
        if (bi < 0 || cost[i][j] < cost[bi][bj]) {
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) {
      throw InfeasibleError("greedy ran out of capacity before meeting demand");
    }
    ++x[bi][bj];
    --cap[bi];
    --need[bj];
    --remaining;
  }
  return make_allocation(inst, std::move(x));
}

AllocationMatrix solve_c_grd(const MpftInstance& inst, double budget) {
  validate(inst);
  const AllocationMatrix c_opt = transportation_solve(inst, incentive_costs(inst));
  const double c_min = c_opt.incentive;
  if (budget < c_min - slack(c_min)) {
    throw InfeasibleBudgetError(
        "incentive budget below the minimum attainable incentive " +
            std::to_string(c_min),
        c_min);
  }

  const int m = static_cast<int>(inst.areas.size());
  const int n = static_cast<int>(inst.tasks.size());
  std::vector<std::int64_t> cap(m), need(n);
  for (int i = 0; i < m; ++i) cap[i] = inst.areas[i].population;
  std::int64_t remaining = 0;
  for (int j = 0; j < n; ++j) {
    need[j] = inst.tasks[j].demand;
    remaining += need[j];
  }
  // Preliminary selection: pure min-distance, one unit at a time.
  std::vector<std::vector<std::int64_t>> x(m, std::vector<std::int64_t>(n, 0));
  while (remaining > 0) {
    int bi = -1, bj = -1;
    for (int i = 0; i < m; ++i) {
      if (cap[i] < 1) continue;
      for (int j = 0; j < n; ++j) {
        if (need[j] < 1) continue;
        if (bi < 0 || inst.dist[i][j] < inst.dist[bi][bj]) {
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) {
      throw InfeasibleError("greedy ran out of capacity before meeting demand");
    }
    ++x[bi][bj];
    --cap[bi];
    --need[bj];
    --remaining;
  }

  // Reassign units toward cheaper areas, best incentive drop per meter of
  // added distance first, until the budget holds.
  double incentive = incentive_of(inst, x);
  while (incentive > budget + slack(budget)) {
    int bi = -1, bj = -1, bt = -1;
    double best_score = -1.0;
    double best_gain = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        if (x[i][j] < 1) continue;
        for (int t = 0; t < m; ++t) {
          if (t == i || cap[t] < 1) continue;
          const double gain = inst.areas[i].incentive - inst.areas[t].incentive;
          if (gain <= 0.0) continue;
          const double added = inst.dist[t][j] - inst.dist[i][j];
          const double score = added > 0.0
                                   ? gain / added
                                   : std::numeric_limits<double>::infinity();
          if (score > best_score || (score == best_score && gain > best_gain)) {
            best_score = score;
            best_gain = gain;
            bi = i;
            bj = j;
            bt = t;
          }
        }
      }
    }
    if (bi < 0) {
      // No incentive-reducing move left; fall back to the incentive optimum,
      // which is within budget by the precondition check above.
      return c_opt;
    }
    --x[bi][bj];
    ++cap[bi];
    ++x[bt][bj];
    --cap[bt];
    incentive -= best_gain;
  }
  return make_allocation(inst, std::move(x));
}

std::vector<ParetoPoint> pareto_sweep(const MpftInstance& inst, SweepMode mode,
                                      const std::vector<double>& grid) {
  validate(inst);
  if (grid.empty()) {
    throw ParameterError("sweep grid must be nonempty");
  }
  const BoundsDetail detail = compute_bounds_detail(inst);
  std::vector<ParetoPoint> points;
  for (double g : grid) {
    ParetoPoint p;
    if (mode == SweepMode::weights) {
      if (g < 0.0 || g > 1.0) {
        throw ParameterError("weight grid entries must lie in [0, 1]");
      }
      p.allocation = solve_w_ilp_impl(inst, g, 1.0 - g, detail);
      p.parameter = {g, 1.0 - g};
    } else {
      p.allocation = solve_c_ilp_impl(inst, g, detail.b.c_min);
      p.parameter = {g, 0.0};
    }
    p.incentive = p.allocation.incentive;
    p.distance = p.allocation.distance;
    points.push_back(std::move(p));
  }
  // Drop dominated and duplicate points, then order by incentive.
  std::vector<ParetoPoint> front;
  for (std::size_t a = 0; a < points.size(); ++a) {
    bool keep = true;
    for (std::size_t b = 0; b < points.size() && keep; ++b) {
      if (a == b) continue;
      const bool leq = points[b].incentive <= points[a].incentive &&
                       points[b].distance <= points[a].distance;
      const bool strict = points[b].incentive < points[a].incentive ||
                          points[b].distance < points[a].distance;
      if (leq && strict) keep = false;
      if (leq && !strict && b < a) keep = false;  // deduplicate equals
    }
    if (keep) front.push_back(points[a]);
  }
  std::sort(front.begin(), front.end(), [](const auto& a, const auto& b) {
    if (a.incentive != b.incentive) return a.incentive < b.incentive;
    return a.distance < b.distance;
  });
  return front;
}

namespace {

void enumerate_rec(const MpftInstance& inst, std::size_t j,
                   std::vector<std::int64_t>& cap,
                   std::vector<std::vector<std::int64_t>>& x,
                   std::optional<double> budget,
                   std::vector<std::pair<double, double>>& out) {
  const std::size_t m = inst.areas.size();
  if (j == inst.tasks.size()) {
    const double inc = incentive_of(inst, x);
    if (budget && inc > *budget + slack(*budget)) return;
    out.emplace_back(inc, distance_of(inst, x));
    return;
  }
  // Distribute task j's demand over areas, area by area.
  std::vector<std::int64_t> units(m, 0);
  auto place = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
    if (i == m - 1) {
      if (left > cap[i]) return;
      units[i] = left;
      for (std::size_t a = 0; a < m; ++a) {
        x[a][j] = units[a];
        cap[a] -= units[a];
      }
      enumerate_rec(inst, j + 1, cap, x, budget, out);
      for (std::size_t a = 0; a < m; ++a) {
        cap[a] += units[a];
        x[a][j] = 0;
      }
      return;
    }
    for (std::int64_t u = 0; u <= std::min<std::int64_t>(left, cap[i]); ++u) {
      units[i] = u;
      self(self, i + 1, left - u);
    }
    units[i] = 0;
  };
  place(place, 0, inst.tasks[j].demand);
}

}  // namespace

std::vector<std::pair<double, double>> exact_enum_oracle(
    const MpftInstance& inst, std::optional<double> budget) {
  validate(inst);
  if (inst.areas.size() > 4 || inst.tasks.size() > 4) {
    throw SizeLimitError("enumeration oracle admits at most 4 areas and 4 tasks");
  }
  for (const auto& t : inst.tasks) {
    if (t.demand > 3) {
      throw SizeLimitError("enumeration oracle admits demands up to 3");
    }
  }
  std::vector<std::int64_t> cap(inst.areas.size());
  for (std::size_t i = 0; i < inst.areas.size(); ++i) {
    cap[i] = inst.areas[i].population;
  }
  std::vector<std::vector<std::int64_t>> x(
      inst.areas.size(), std::vector<std::int64_t>(inst.tasks.size(), 0));
  std::vector<std::pair<double, double>> out;
  enumerate_rec(inst, 0, cap, x, budget, out);
  return out;
}

}  // namespace mcs

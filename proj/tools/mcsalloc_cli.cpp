// Command-line front end: scenario generation, solver runs, parameter
// sweeps, objective bounds and instance validation.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcs/errors.hpp"
#include "mcs/fpmt.hpp"
#include "mcs/mpft.hpp"
#include "mcs/scenario.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitLimit = 5;

std::string fnv1a_digest(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// ---------------------------------------------------------------------------
// generate

struct GenerateFlags {
  mcs::ScenarioConfig config;
  std::string mode;
  std::string distribution = "hybrid";
  std::string coord_mode = "planar";
  std::vector<double> box;
  std::string out;
  std::string towers;
  bool capacity_set = false;  // --p given explicitly
};

mcs::ScenarioConfig resolve_config(GenerateFlags& f) {
  const mcs::ScenarioMode mode =
      f.mode == "fpmt" ? mcs::ScenarioMode::fpmt : mcs::ScenarioMode::mpft;
  // CLI11 wrote into f.config, which starts from the fpmt defaults; re-apply
  // the mode-dependent default wherever the flag was left untouched.
  f.config.mode = mode;
  if (!f.capacity_set) {
    f.config.capacity = mcs::ScenarioConfig::defaults_for(mode).capacity;
  }
  if (f.distribution == "compact") {
    f.config.distribution = mcs::TaskDistribution::compact;
  } else if (f.distribution == "scattered") {
    f.config.distribution = mcs::TaskDistribution::scattered;
  } else if (f.distribution == "hybrid") {
    f.config.distribution = mcs::TaskDistribution::hybrid;
  } else {
    throw mcs::ParameterError("unknown distribution '" + f.distribution + "'");
  }
  f.config.coord_mode = f.coord_mode == "geographic" ? mcs::CoordMode::geographic
                                                     : mcs::CoordMode::planar;
  if (!f.box.empty()) {
    if (f.box.size() != 4) {
      throw mcs::ParameterError("--box needs x0 y0 x1 y1");
    }
    f.config.user_area = {f.box[0], f.box[1], f.box[2], f.box[3]};
  }
  return f.config;
}

void apply_towers(mcs::ScenarioInstance& inst, const std::string& path) {
  const auto towers = mcs::load_tower_csv(path);
  if (towers.empty()) {
    throw mcs::ParseError("tower CSV holds no towers");
  }
  std::mt19937_64 eng(inst.config.seed ^ 0x746f776572ull);
  auto pick = [&]() { return towers[eng() % towers.size()]; };
  if (inst.fpmt) {
    for (auto& p : inst.fpmt->participants) p.loc = pick();
    for (auto& t : inst.fpmt->tasks) t.loc = pick();
  } else if (inst.mpft) {
    for (auto& t : inst.mpft->tasks) t.loc = pick();
    for (std::size_t i = 0; i < inst.mpft->areas.size(); ++i) {
      inst.mpft->areas[i].loc.mode = mcs::CoordMode::geographic;
      for (std::size_t j = 0; j < inst.mpft->tasks.size(); ++j) {
        inst.mpft->dist[i][j] =
            mcs::distance(inst.mpft->areas[i].loc, inst.mpft->tasks[j].loc);
      }
    }
  }
}

int cmd_generate(GenerateFlags& f) {
  const mcs::ScenarioConfig config = resolve_config(f);
  mcs::ScenarioInstance inst = mcs::generate(config);
  if (!f.towers.empty()) {
    apply_towers(inst, f.towers);
  }
  mcs::save_instance(inst, f.out);
  std::cout << fnv1a_digest(mcs::serialize_instance(inst)) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveFlags {
  std::string instance;
  std::string solver;
  int k = 0;
  double k1 = 0.5;
  double k2 = 0.5;
  double budget = 0.0;
  bool budget_set = false;
  std::string format = "json";
  double speed = 0.0;
  std::size_t route_budget = 1'000'000;
  bool no_runtime = false;
};

bool is_fpmt_solver(const std::string& s) {
  return s == "mt-mcmf" || s == "mtp-mcmf" || s == "mt-grdpt";
}
bool is_mpft_solver(const std::string& s) {
  return s == "w-ilp" || s == "c-ilp" || s == "w-grd" || s == "c-grd";
}

json fpmt_report(const mcs::FpmtInstance& inst, const mcs::FpmtAssignment& a,
                 double speed) {
  const mcs::FpmtMetrics m = mcs::assignment_metrics(a, speed);
  json assignment = json::array();
  for (const auto& e : a.assigned) {
    json route = json::array();
    for (int t : e.route) route.push_back(inst.tasks[t].id);
    assignment.push_back({{"participant", inst.participants[e.participant].id},
                          {"route", std::move(route)},
                          {"distance", e.distance},
                          {"complete", e.complete}});
  }
  return json{{"objectives",
               {{"accomplished", a.accomplished},
                {"total_distance", a.total_distance},
                {"mean_completion_min", m.mean_completion_minutes},
                {"performer_count_variance", m.performer_count_variance}}},
              {"assignment", std::move(assignment)}};
}

json mpft_report(const mcs::AllocationMatrix& a) {
  return json{{"objectives",
               {{"total_incentive", a.incentive}, {"total_distance", a.distance}}},
              {"allocation", a.x}};
}

int cmd_solve(SolveFlags& f) {
  const mcs::ScenarioInstance inst = mcs::load_instance(f.instance);
  const std::string digest = fnv1a_digest(mcs::serialize_instance(inst));
  const double speed = f.speed > 0.0 ? f.speed : inst.config.speed;

  const bool want_fpmt = is_fpmt_solver(f.solver) ||
                         (f.solver == "oracle" && inst.fpmt.has_value());
  if ((want_fpmt && !inst.fpmt) || (is_mpft_solver(f.solver) && !inst.mpft)) {
    throw mcs::ModeMismatchError("solver '" + f.solver +
                                 "' does not match the instance mode");
  }

  json report;
  report["solver"] = f.solver;
  report["instance_digest"] = digest;
  json params = json::object();
  Timer timer;

  if (inst.fpmt && (is_fpmt_solver(f.solver) || f.solver == "oracle")) {
    const mcs::FpmtInstance& fi = *inst.fpmt;
    mcs::EnumerationOptions opts;
    opts.route_budget = f.route_budget;
    mcs::FpmtAssignment a;
    if (f.solver == "mt-mcmf") {
      a = mcs::solve_mt_mcmf(fi, mcs::enumerate_full(fi, opts));
    } else if (f.solver == "mtp-mcmf") {
      const int k = f.k > 0 ? f.k : std::min<int>(2 * fi.quota, fi.tasks.size());
      params["k"] = k;
      a = mcs::solve_mtp_mcmf(fi, k, opts);
    } else if (f.solver == "mt-grdpt") {
      a = mcs::solve_mt_grdpt(fi);
    } else {  // oracle
      a = mcs::exact_oracle(fi, mcs::enumerate_full(fi, opts));
    }
    report.update(fpmt_report(fi, a, speed));
  } else if (inst.mpft) {
    const mcs::MpftInstance& mi = *inst.mpft;
    if (f.solver == "w-ilp" || f.solver == "w-grd") {
      params["k1"] = f.k1;
      params["k2"] = f.k2;
      const auto a = f.solver == "w-ilp" ? mcs::solve_w_ilp(mi, f.k1, f.k2)
                                         : mcs::solve_w_grd(mi, f.k1, f.k2);
      report.update(mpft_report(a));
    } else if (f.solver == "c-ilp" || f.solver == "c-grd") {
      if (!f.budget_set) {
        throw mcs::ParameterError("solver '" + f.solver + "' needs --budget");
      }
      params["budget"] = f.budget;
      const auto a = f.solver == "c-ilp" ? mcs::solve_c_ilp(mi, f.budget)
                                         : mcs::solve_c_grd(mi, f.budget);
      report.update(mpft_report(a));
    } else {  // oracle
      const auto pairs = mcs::exact_enum_oracle(mi);
      double min_inc = pairs.front().first, min_dist = pairs.front().second;
      for (const auto& [inc, dist] : pairs) {
        min_inc = std::min(min_inc, inc);
        min_dist = std::min(min_dist, dist);
      }
      report["objectives"] = {{"feasible_allocations", pairs.size()},
                              {"min_incentive", min_inc},
                              {"min_distance", min_dist}};
    }
  } else {
    throw mcs::ModeMismatchError("unknown solver '" + f.solver + "'");
  }

  report["parameters"] = std::move(params);
  if (!f.no_runtime) {
    report["runtime_ms"] = timer.ms();
  }

  if (f.format == "csv") {
    const json& obj = report["objectives"];
    auto cell = [&](const char* key) {
      return obj.contains(key) ? obj[key].dump() : std::string();
    };
    std::cout << "solver,instance_digest,accomplished,total_distance,"
                 "total_incentive,mean_completion_min,runtime_ms\n";
    std::cout << f.solver << ',' << digest << ',' << cell("accomplished") << ','
              << cell("total_distance") << ',' << cell("total_incentive") << ','
              << cell("mean_completion_min") << ','
              << (f.no_runtime ? std::string() : std::to_string(timer.ms()))
              << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bounds / validate

int cmd_bounds(const std::string& path) {
  const mcs::ScenarioInstance inst = mcs::load_instance(path);
  if (!inst.mpft) {
    throw mcs::ModeMismatchError("bounds requires an mpft instance");
  }
  const mcs::ObjectiveBounds b = mcs::compute_bounds(*inst.mpft);
  std::cout << json{{"c_min", b.c_min},
                    {"c_max", b.c_max},
                    {"d_min", b.d_min},
                    {"d_max", b.d_max}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_validate(const std::string& path) {
  const mcs::ScenarioInstance inst = mcs::load_instance(path);  // validates
  std::cout << "ok " << fnv1a_digest(mcs::serialize_instance(inst)) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepFlags {
  std::string axis;
  std::vector<std::string> values;
  std::string seeds;  // "a..b" or "a"
  std::string instance;
  GenerateFlags gen;
  int k = 0;
  std::string out;
};

std::vector<std::uint64_t> parse_seeds(const std::string& spec, std::uint64_t fallback) {
  if (spec.empty()) return {fallback};
  const auto dots = spec.find("..");
  if (dots == std::string::npos) {
    return {std::stoull(spec)};
  }
  const std::uint64_t a = std::stoull(spec.substr(0, dots));
  const std::uint64_t b = std::stoull(spec.substr(dots + 2));
  if (b < a) throw mcs::ParameterError("--seeds range must be ascending");
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
  return seeds;
}

struct SweepRow {
  std::string axis;
  std::string value;
  std::string seed;
  std::string solver;
  std::optional<double> accomplished;
  std::optional<double> total_distance;
  std::optional<double> total_incentive;
  std::optional<double> mean_completion_min;
  std::optional<double> runtime_ms;
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(15);
  ss << v;
  return ss.str();
}

void emit_row(std::ostream& os, const SweepRow& r) {
  auto cell = [](const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
  };
  os << r.axis << ',' << r.value << ',' << r.seed << ',' << r.solver << ','
     << cell(r.accomplished) << ',' << cell(r.total_distance) << ','
     << cell(r.total_incentive) << ',' << cell(r.mean_completion_min) << ','
     << cell(r.runtime_ms) << "\n";
  os.flush();
}

int worker_count() {
  if (const char* env = std::getenv("MCSALLOC_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void append_aggregates(std::ostream& os, const std::vector<SweepRow>& rows) {
  // Mean and stddev per (value, solver), preserving first-seen order.
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.value, r.solver);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      keys.push_back(key);
    }
  }
  for (const auto& [value, solver] : keys) {
    std::vector<const SweepRow*> group;
    for (const auto& r : rows) {
      if (r.value == value && r.solver == solver) group.push_back(&r);
    }
    if (group.size() < 2) continue;
    auto agg = [&](auto field, bool stddev) -> std::optional<double> {
      std::vector<double> vals;
      for (const auto* r : group) {
        if (r->*field) vals.push_back(*(r->*field));
      }
      if (vals.empty()) return std::nullopt;
      double mean = 0.0;
      for (double v : vals) mean += v;
      mean /= static_cast<double>(vals.size());
      if (!stddev) return mean;
      double var = 0.0;
      for (double v : vals) var += (v - mean) * (v - mean);
      return std::sqrt(var / static_cast<double>(vals.size()));
    };
    for (const bool stddev : {false, true}) {
      SweepRow r;
      r.axis = group.front()->axis;
      r.value = value;
      r.seed = stddev ? "stddev" : "mean";
      r.solver = solver;
      r.accomplished = agg(&SweepRow::accomplished, stddev);
      r.total_distance = agg(&SweepRow::total_distance, stddev);
      r.total_incentive = agg(&SweepRow::total_incentive, stddev);
      r.mean_completion_min = agg(&SweepRow::mean_completion_min, stddev);
      r.runtime_ms = agg(&SweepRow::runtime_ms, stddev);
      emit_row(os, r);
    }
  }
}

SweepRow fpmt_row(const std::string& axis, const std::string& value,
                  const std::string& seed, const std::string& solver,
                  const mcs::FpmtAssignment& a, double speed, double ms) {
  const mcs::FpmtMetrics m = mcs::assignment_metrics(a, speed);
  SweepRow r;
  r.axis = axis;
  r.value = value;
  r.seed = seed;
  r.solver = solver;
  r.accomplished = static_cast<double>(a.accomplished);
  r.total_distance = a.total_distance;
  r.mean_completion_min = m.mean_completion_minutes;
  r.runtime_ms = ms;
  return r;
}

int cmd_sweep(SweepFlags& f) {
  std::ofstream file;
  std::ostream* osp = &std::cout;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) throw mcs::ParseError("cannot open '" + f.out + "' for writing");
    osp = &file;
  }
  std::ostream& os = *osp;
  os << "axis,value,seed,solver,accomplished,total_distance,total_incentive,"
        "mean_completion_min,runtime_ms\n";

  if (f.values.empty()) {
    throw mcs::ParameterError("--values must be nonempty");
  }
  const std::vector<std::uint64_t> seeds = parse_seeds(f.seeds, f.gen.config.seed);
  std::vector<std::function<std::vector<SweepRow>()>> jobs;
  std::vector<SweepRow> all_rows;

  const bool structural = f.axis == "tasks" || f.axis == "participants" ||
                          f.axis == "q" || f.axis == "distribution";
  if (structural) {
    for (const std::string& value : f.values) {
      for (const std::uint64_t seed : seeds) {
        jobs.push_back([&, value, seed]() {
          GenerateFlags g = f.gen;
          g.mode = "fpmt";
          g.config.seed = seed;
          if (f.axis == "tasks") {
            g.config.tasks = std::stoi(value);
          } else if (f.axis == "participants") {
            g.config.participants = std::stoi(value);
          } else if (f.axis == "q") {
            g.config.quota = std::stoi(value);
          } else {
            g.distribution = value;
          }
          const mcs::FpmtInstance fi = mcs::generate_fpmt(resolve_config(g));
          const double speed = g.config.speed;
          const int k =
              f.k > 0 ? std::min<int>(f.k, fi.tasks.size())
                      : std::min<int>(2 * fi.quota, fi.tasks.size());
          std::vector<SweepRow> rows;
          const std::string seed_str = std::to_string(seed);
          {
            Timer t;
            const auto a = mcs::solve_mt_mcmf(fi, mcs::enumerate_full(fi));
            rows.push_back(fpmt_row(f.axis, value, seed_str, "mt-mcmf", a, speed, t.ms()));
          }
          {
            Timer t;
            const auto a = mcs::solve_mtp_mcmf(fi, k);
            rows.push_back(fpmt_row(f.axis, value, seed_str, "mtp-mcmf", a, speed, t.ms()));
          }
          {
            Timer t;
            const auto a = mcs::solve_mt_grdpt(fi);
            rows.push_back(fpmt_row(f.axis, value, seed_str, "mt-grdpt", a, speed, t.ms()));
          }
          return rows;
        });
      }
    }
  } else if (f.axis == "k") {
    if (f.instance.empty()) {
      throw mcs::ParameterError("axis 'k' sweeps a fixed instance; pass --instance");
    }
    const auto inst = mcs::load_instance(f.instance);
    if (!inst.fpmt) throw mcs::ModeMismatchError("axis 'k' needs an fpmt instance");
    const auto fi = std::make_shared<mcs::FpmtInstance>(*inst.fpmt);
    const double speed = inst.config.speed;
    for (const std::string& value : f.values) {
      jobs.push_back([&, fi, value, speed]() {
        const int k = std::stoi(value);
        Timer t;
        const auto a = mcs::solve_mtp_mcmf(*fi, k);
        return std::vector<SweepRow>{
            fpmt_row("k", value, std::to_string(f.gen.config.seed), "mtp-mcmf",
                     a, speed, t.ms())};
      });
    }
  } else if (f.axis == "weights" || f.axis == "budgets") {
    if (f.instance.empty()) {
      throw mcs::ParameterError("axis '" + f.axis +
                                "' sweeps a fixed instance; pass --instance");
    }
    const auto inst = mcs::load_instance(f.instance);
    if (!inst.mpft) {
      throw mcs::ModeMismatchError("axis '" + f.axis + "' needs an mpft instance");
    }
    const auto mi = std::make_shared<mcs::MpftInstance>(*inst.mpft);
    for (const std::string& value : f.values) {
      jobs.push_back([&, mi, value]() {
        const double v = std::stod(value);
        std::vector<SweepRow> rows;
        const std::string seed_str = std::to_string(f.gen.config.seed);
        auto push = [&](const std::string& solver, const mcs::AllocationMatrix& a,
                        double ms) {
          SweepRow r;
          r.axis = f.axis;
          r.value = value;
          r.seed = seed_str;
          r.solver = solver;
          r.total_incentive = a.incentive;
          r.total_distance = a.distance;
          r.runtime_ms = ms;
          rows.push_back(std::move(r));
        };
        if (f.axis == "weights") {
          Timer t1;
          push("w-ilp", mcs::solve_w_ilp(*mi, v, 1.0 - v), t1.ms());
          Timer t2;
          push("w-grd", mcs::solve_w_grd(*mi, v, 1.0 - v), t2.ms());
        } else {
          Timer t1;
          push("c-ilp", mcs::solve_c_ilp(*mi, v), t1.ms());
          Timer t2;
          push("c-grd", mcs::solve_c_grd(*mi, v), t2.ms());
        }
        return rows;
      });
    }
  } else {
    throw mcs::ParameterError("unknown sweep axis '" + f.axis + "'");
  }

  // Run jobs (optionally in parallel), emit rows in grid order, and keep
  // them around for the aggregate rows. Completed rows are flushed even
  // when a later grid point fails.
  std::vector<SweepRow> rows_for_agg;
  const int workers = std::min<int>(worker_count(), static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (const auto& job : jobs) {
      for (auto& row : job()) {
        emit_row(os, row);
        rows_for_agg.push_back(std::move(row));
      }
    }
  } else {
    std::vector<std::vector<SweepRow>> results(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= jobs.size()) return;
          try {
            results[i] = jobs[i]();
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
      for (auto& row : results[i]) {
        emit_row(os, row);
        rows_for_agg.push_back(std::move(row));
      }
    }
  }
  if (seeds.size() > 1) {
    append_aggregates(os, rows_for_agg);
  }
  return 0;
}

// ---------------------------------------------------------------------------

int dispatch(int argc, char** argv) {
  CLI::App app{"Multi-task allocation solvers for mobile crowd sensing"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* g = app.add_subcommand("generate", "Generate a scenario instance file");
  g->add_option("--mode", gen.mode, "fpmt or mpft")
      ->required()
      ->check(CLI::IsMember({"fpmt", "mpft"}));
  g->add_option("--seed", gen.config.seed, "random seed");
  g->add_option("--m,--participants", gen.config.participants,
                "participant count (fpmt)");
  g->add_option("--n,--tasks", gen.config.tasks, "task count");
  g->add_option("--q,--quota", gen.config.quota,
                "tasks per participant; 0 draws from [2,7]");
  auto* gen_cap = g->add_option("--p,--capacity", gen.config.capacity,
                                "per-task capacity (fpmt) or demand (mpft)");
  g->add_option("--distribution", gen.distribution,
                "compact, scattered or hybrid");
  g->add_option("--coord-mode", gen.coord_mode, "planar or geographic");
  g->add_option("--box", gen.box, "user area x0 y0 x1 y1")->expected(4);
  g->add_option("--speed", gen.config.speed, "walking speed m/min");
  g->add_option("--areas", gen.config.area_count, "working area count (mpft)");
  g->add_option("--pop-lo", gen.config.area_pop_lo, "min area population");
  g->add_option("--pop-hi", gen.config.area_pop_hi, "max area population");
  g->add_option("--towers", gen.towers, "tower CSV (id,lat,lon) for locations");
  g->add_option("--out", gen.out, "output instance file")->required();

  SolveFlags sol;
  auto* s = app.add_subcommand("solve", "Run one solver on an instance");
  s->add_option("instance", sol.instance, "instance file")->required();
  s->add_option("--solver", sol.solver, "solver name")
      ->required()
      ->check(CLI::IsMember({"mt-mcmf", "mtp-mcmf", "mt-grdpt", "w-ilp",
                             "c-ilp", "w-grd", "c-grd", "oracle"}));
  s->add_option("--k", sol.k, "pruning parameter (mtp-mcmf)");
  s->add_option("--k1", sol.k1, "incentive weight");
  s->add_option("--k2", sol.k2, "distance weight");
  auto* budget_opt = s->add_option("--budget", sol.budget, "incentive budget");
  s->add_option("--format", sol.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  s->add_option("--speed", sol.speed, "walking speed m/min override");
  s->add_option("--route-budget", sol.route_budget, "enumeration route budget");
  s->add_flag("--no-runtime", sol.no_runtime,
              "omit runtime for byte-reproducible output");

  SweepFlags sw;
  auto* w = app.add_subcommand("sweep", "Sweep a parameter, emit a CSV table");
  w->add_option("--axis", sw.axis,
                "tasks, participants, q, k, weights, budgets or distribution")
      ->required();
  w->add_option("--values", sw.values, "grid values")->required()->delimiter(',');
  w->add_option("--seeds", sw.seeds, "seed or seed range a..b");
  w->add_option("--instance", sw.instance, "fixed instance (k/weights/budgets)");
  w->add_option("--k", sw.k, "mtp-mcmf pruning parameter for structural axes");
  w->add_option("--out", sw.out, "output CSV path (default stdout)");
  w->add_option("--seed", sw.gen.config.seed, "base seed");
  w->add_option("--m,--participants", sw.gen.config.participants, "participants");
  w->add_option("--n,--tasks", sw.gen.config.tasks, "tasks");
  w->add_option("--q,--quota", sw.gen.config.quota, "quota");
  auto* sw_cap =
      w->add_option("--p,--capacity", sw.gen.config.capacity, "capacity/demand");
  w->add_option("--distribution", sw.gen.distribution, "task distribution");
  w->add_option("--box", sw.gen.box, "user area x0 y0 x1 y1")->expected(4);
  w->add_option("--speed", sw.gen.config.speed, "walking speed m/min");

  std::string bounds_path;
  auto* b = app.add_subcommand("bounds", "Print objective bounds (mpft)");
  b->add_option("instance", bounds_path, "instance file")->required();

  std::string validate_path;
  auto* v = app.add_subcommand("validate", "Check instance invariants");
  v->add_option("instance", validate_path, "instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (g->parsed()) {
    gen.capacity_set = gen_cap->count() > 0;
    return cmd_generate(gen);
  }
  if (s->parsed()) {
    sol.budget_set = budget_opt->count() > 0;
    return cmd_solve(sol);
  }
  if (w->parsed()) {
    sw.gen.capacity_set = sw_cap->count() > 0;
    return cmd_sweep(sw);
  }
  if (b->parsed()) return cmd_bounds(bounds_path);
  if (v->parsed()) return cmd_validate(validate_path);
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const mcs::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const mcs::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const mcs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

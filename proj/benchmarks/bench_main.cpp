// Micro-benchmarks for the hot paths: route solving, set enumeration, the
// block solver and the weighted/budgeted allocation solvers.

#include <benchmark/benchmark.h>

#include "mcs/fpmt.hpp"
#include "mcs/mpft.hpp"
#include "mcs/scenario.hpp"
#include "mcs/tsp.hpp"

namespace {

mcs::FpmtInstance fpmt_instance(int m, int n, int q) {
  auto cfg = mcs::ScenarioConfig::defaults_for(mcs::ScenarioMode::fpmt);
  cfg.seed = 1;
  cfg.participants = m;
  cfg.tasks = n;
  cfg.quota = q;
  return mcs::generate_fpmt(cfg);
}

mcs::MpftInstance mpft_instance() {
  auto cfg = mcs::ScenarioConfig::defaults_for(mcs::ScenarioMode::mpft);
  cfg.seed = 1;
  return mcs::generate_mpft(cfg);
}

void BM_ExactRoute(benchmark::State& state) {
  const auto inst = fpmt_instance(1, static_cast<int>(state.range(0)), 2);
  std::vector<mcs::Location> pts{inst.participants[0].loc};
  for (const auto& t : inst.tasks) pts.push_back(t.loc);
  const mcs::RouteProblem prob{mcs::build_distance_matrix(pts), 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcs::exact_open_path(prob));
  }
}
BENCHMARK(BM_ExactRoute)->Arg(6)->Arg(10)->Arg(14);

void BM_ChristofidesRoute(benchmark::State& state) {
  const auto inst = fpmt_instance(1, static_cast<int>(state.range(0)), 2);
  std::vector<mcs::Location> pts{inst.participants[0].loc};
  for (const auto& t : inst.tasks) pts.push_back(t.loc);
  const mcs::RouteProblem prob{mcs::build_distance_matrix(pts), 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcs::christofides_open_path(prob));
  }
}
BENCHMARK(BM_ChristofidesRoute)->Arg(10)->Arg(20)->Arg(40);

void BM_EnumerateFull(benchmark::State& state) {
  const auto inst = fpmt_instance(10, static_cast<int>(state.range(0)), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcs::enumerate_full(inst));
  }
}
BENCHMARK(BM_EnumerateFull)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SolveMtMcmf(benchmark::State& state) {
  const auto inst = fpmt_instance(10, static_cast<int>(state.range(0)), 5);
  const auto fam = mcs::enumerate_full(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcs::solve_mt_mcmf(inst, fam));
  }
}
BENCHMARK(BM_SolveMtMcmf)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SolveMtpMcmf(benchmark::State& state) {
  const auto inst = fpmt_instance(10, 20, 5);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcs::solve_mtp_mcmf(inst, k));
  }
}
BENCHMARK(BM_SolveMtpMcmf)->Arg(7)->Arg(10)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_ComputeBounds(benchmark::State& state) {
  const auto inst = mpft_instance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcs::compute_bounds(inst));
  }
}
BENCHMARK(BM_ComputeBounds)->Unit(benchmark::kMillisecond);

void BM_SolveWIlp(benchmark::State& state) {
  const auto inst = mpft_instance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcs::solve_w_ilp(inst, 0.5, 0.5));
  }
}
BENCHMARK(BM_SolveWIlp)->Unit(benchmark::kMillisecond);

void BM_SolveCIlp(benchmark::State& state) {
  const auto inst = mpft_instance();
  const auto b = mcs::compute_bounds(inst);
  const double budget = b.c_min + 0.5 * (b.c_max - b.c_min);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcs::solve_c_ilp(inst, budget));
  }
}
BENCHMARK(BM_SolveCIlp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

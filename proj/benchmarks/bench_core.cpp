#include <benchmark/benchmark.h>

#include <numbers>

#include "qcl/dynamics.hpp"
#include "qcl/landscape.hpp"
#include "qcl/scan.hpp"

namespace {

using namespace qcl;
using std::numbers::pi;

ReducedProblem bench_problem() { return scan_default(pi / 4, 7 * pi / 6, pi / 12); }

PiecewiseControl bench_control(std::size_t n) {
  return random_start(pi / 12, static_cast<std::uint32_t>(n), 1.0, 5);
}

void BM_Propagate(benchmark::State& state) {
  const ReducedProblem rp = bench_problem();
  const auto f = bench_control(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(rp, f));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Propagate)->Arg(10)->Arg(100)->Arg(1000);

void BM_Objective(benchmark::State& state) {
  const ReducedProblem rp = bench_problem();
  const auto f = bench_control(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(objective(rp, f));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Objective)->Arg(10)->Arg(100)->Arg(1000);

void BM_ObjectiveDense(benchmark::State& state) {
  const ReducedProblem rp = bench_problem();
  const auto f = bench_control(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(objective_dense(rp, f));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ObjectiveDense)->Arg(100);

void BM_Gradient(benchmark::State& state) {
  const ReducedProblem rp = bench_problem();
  const auto f = bench_control(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gradient(rp, f));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Gradient)->Arg(10)->Arg(100)->Arg(1000);

void BM_Classify(benchmark::State& state) {
  const ProblemVectors pv = vectors(bench_problem());
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(pv));
    benchmark::DoNotOptimize(horizon_type(pv));
  }
}
BENCHMARK(BM_Classify);

void BM_EstimateP(benchmark::State& state) {
  ScanConfig cfg;
  cfg.T = pi / 12;
  cfg.samples = static_cast<std::uint32_t>(state.range(0));
  cfg.seed = 2024;
  const ReducedProblem rp = bench_problem();
  for (auto _ : state) benchmark::DoNotOptimize(estimate_P(rp, cfg, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateP)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ProbeSaddle(benchmark::State& state) {
  const ReducedProblem rp = scan_default(pi / 4, pi / 2, pi / 12);
  for (auto _ : state) benchmark::DoNotOptimize(probe_saddle(rp));
}
BENCHMARK(BM_ProbeSaddle)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "lqnet/lqnet.hpp"

using namespace lqnet;

static void BM_StationaryCoeffs(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stationary_chain_coeffs(0.5, 1.0, K));
}
BENCHMARK(BM_StationaryCoeffs)->Arg(64)->Arg(1024);

static void BM_KernelRow(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_row(n, 2.0, 0.5));
}
BENCHMARK(BM_KernelRow)->Arg(60)->Arg(500);

static void BM_ChainRiccati(benchmark::State& state) {
  const ChainParams cp{1.0, 1.0, 0.5, 1.0, 1.0};
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_chain_riccati(cp, K, 1000));
}
BENCHMARK(BM_ChainRiccati)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_TwoSidedRiccati(benchmark::State& state) {
  TwoSidedParams tp;
  tp.c = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_twosided_riccati(tp, 32, 1000));
}
BENCHMARK(BM_TwoSidedRiccati)->Unit(benchmark::kMillisecond);

static void BM_DenseExpm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = catalan_generator(1.0, n - 1);
  const auto A = DenseMatrix::toeplitz(n, g.row, 0);
  for (auto _ : state) benchmark::DoNotOptimize(dense_expm(A, 1.0));
}
BENCHMARK(BM_DenseExpm)->Arg(60)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Hyp2f1(benchmark::State& state) {
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyp2f1(-0.5, 0.5, 2.0, z));
    z = z < 0.9 ? z + 0.01 : 0.1;
  }
}
BENCHMARK(BM_Hyp2f1);

static void BM_SimulateBlock(benchmark::State& state) {
  const ChainParams cp{1.0, 0.0, 1.0, 1.0, 1.0};
  SimConfig cfg;
  cfg.players = static_cast<int>(state.range(0));
  cfg.paths = 128;
  cfg.dt = 0.01;
  const auto coeffs = stationary_chain_coeffs(1.0, 1.0, cfg.players - 1);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg, cp, coeffs));
  state.SetItemsProcessed(state.iterations() * cfg.paths * 100 * cfg.players);
}
BENCHMARK(BM_SimulateBlock)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

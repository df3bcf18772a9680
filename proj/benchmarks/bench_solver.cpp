#include <benchmark/benchmark.h>

#include "gmeb/data_gen.hpp"
#include "gmeb/geometry.hpp"
#include "gmeb/solver.hpp"

namespace {

using namespace gmeb;

Dataset bench_dataset(int n, int k, int m1, int m2) {
  DatasetSpec spec;
  spec.model = DataModel::kNestedBall;
  spec.n = n;
  spec.k0 = k;
  spec.eps1 = 1.0;
  spec.eps2 = 0.125;
  spec.m1 = m1;
  spec.m2 = m2;
  spec.seed = 12021;
  return nested_ball_dataset(spec);
}

void BM_p2s_distance(benchmark::State& state) {
  const Dataset data = bench_dataset(static_cast<int>(state.range(0)), 3, 20, 0);
  const Basis& u = *data.truth_center;
  for (auto _ : state) {
    double total = 0.0;
    for (int i = 0; i < data.collection.size(); ++i) {
      total += p2s_distance(u, data.collection[i]);
    }
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_p2s_distance)->Arg(10)->Arg(50)->Arg(200);

void BM_weighted_eigenspace(benchmark::State& state) {
  const Dataset data = bench_dataset(static_cast<int>(state.range(0)), 3, 50, 0);
  const Eigen::VectorXd w =
      Eigen::VectorXd::Constant(data.collection.size(), 1.0 / data.collection.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_dominant_eigenspace(data.collection, w, 3));
  }
}
BENCHMARK(BM_weighted_eigenspace)->Arg(10)->Arg(50)->Arg(200);

void BM_solve_nested_ball(benchmark::State& state) {
  const Dataset data = bench_dataset(10, 3, 70, 30);
  SolverConfig config;
  config.max_iter = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(data.collection, 3, config));
  }
}
BENCHMARK(BM_solve_nested_ball)->Arg(50)->Arg(500);

void BM_warm_start_sweep(benchmark::State& state) {
  DatasetSpec spec;
  spec.model = DataModel::kNestedBall;
  spec.n = 10;
  spec.k0 = 4;
  spec.eps1 = 1.0;
  spec.eps2 = 0.25;
  spec.m1 = 35;
  spec.m2 = 15;
  spec.dims = {4, 5, 6};
  spec.seed = 31013;
  const Dataset data = nested_ball_dataset(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(warm_start_sweep(data.collection, 6));
  }
}
BENCHMARK(BM_warm_start_sweep);

}  // namespace

BENCHMARK_MAIN();

#include <random>

#include <benchmark/benchmark.h>

#include "ghrelax/classification.hpp"
#include "ghrelax/ghmatch.hpp"
#include "ghrelax/relaxed_distance.hpp"
#include "ghrelax/symmetric_eigen.hpp"

using namespace ghrelax;

static void BM_SymmetricEigen(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return g(rng); });
  a = 0.5 * (a + a.transpose());
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigen(a));
  state.SetComplexityN(n);
}
BENCHMARK(BM_SymmetricEigen)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed);

static void BM_ProjectPsd(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return g(rng); });
  a = 0.5 * (a + a.transpose());
  for (auto _ : state) benchmark::DoNotOptimize(project_psd(a));
}
BENCHMARK(BM_ProjectPsd)->Arg(10)->Arg(17)->Arg(26);

static void BM_RelaxedDistance(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto kind = static_cast<FeasibleSetKind>(state.range(1));
  std::mt19937_64 rng(3);
  const auto x = random_generic_space(n, rng);
  const auto y = random_generic_space(n, rng);
  SolverConfig cfg;
  cfg.tol = 1e-6;
  int iters = 0;
  for (auto _ : state) {
    const auto r = relaxed_distance(x, y, kind, 1.0, cfg);
    iters = r.solution.iterations;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["admm_iters"] = iters;
}
BENCHMARK(BM_RelaxedDistance)
    ->Args({3, static_cast<int>(FeasibleSetKind::Reg)})
    ->Args({4, static_cast<int>(FeasibleSetKind::Reg)})
    ->Args({3, static_cast<int>(FeasibleSetKind::GH)})
    ->Args({4, static_cast<int>(FeasibleSetKind::GH)})
    ->Unit(benchmark::kMillisecond);

static void BM_GhMatch(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  const auto x = random_generic_space(n, rng, 3);
  const auto y = x.permuted(random_permutation(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(gh_match(x, y).upper_bound);
}
BENCHMARK(BM_GhMatch)->Arg(10)->Arg(30)->Arg(60)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

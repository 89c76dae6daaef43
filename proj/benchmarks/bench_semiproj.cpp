#include <benchmark/benchmark.h>

#include "ssal/rng.hpp"
#include "ssal/semiproj.hpp"

namespace {

void BM_ProjectSemicard(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ssal::CounterRng rng(7);
  ssal::Vector w(n);
  for (int i = 0; i < n; ++i) w[i] = rng.gaussian();
  ssal::SemicontinuousSet Y{ssal::Vector::Constant(n, 0.1),
                            ssal::Vector::Ones(n), n / 10 + 1};
  for (auto _ : state) {
    auto res = ssal::project_semicard(w, Y);
    benchmark::DoNotOptimize(res.y.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ProjectSemicard)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)
    ->Complexity();

void BM_BranchCosts(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ssal::CounterRng rng(7);
  ssal::Vector w(n);
  for (int i = 0; i < n; ++i) w[i] = rng.gaussian();
  ssal::SemicontinuousSet Y{ssal::Vector::Constant(n, 0.1),
                            ssal::Vector::Ones(n), n / 10 + 1};
  for (auto _ : state) {
    auto costs = ssal::branch_costs(w, Y);
    benchmark::DoNotOptimize(costs.r.data());
  }
}
BENCHMARK(BM_BranchCosts)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

}  // namespace

BENCHMARK_MAIN();

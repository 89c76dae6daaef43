#include <benchmark/benchmark.h>

#include "ssal/problems.hpp"
#include "ssal/solver.hpp"

namespace {

void BM_PortfolioSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = ssal::gen_portfolio(n, 10, 1);
  const auto params = ssal::SolverParams::defaults_for(inst.spec);
  int iterations = 0;
  for (auto _ : state) {
    const auto report = ssal::solve(inst.spec, params);
    iterations = report.outer_iterations;
    benchmark::DoNotOptimize(report.objective_polished);
  }
  state.counters["outer_iterations"] = iterations;
}
BENCHMARK(BM_PortfolioSolve)->Arg(100)->Arg(200)->Arg(500)
    ->Unit(benchmark::kMillisecond);

void BM_CsSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = ssal::gen_cs(n / 2, n, n / 10, 0.01, 1);
  const auto params = ssal::SolverParams::defaults_for(inst.spec);
  int iterations = 0;
  for (auto _ : state) {
    const auto report = ssal::solve(inst.spec, params);
    iterations = report.outer_iterations;
    benchmark::DoNotOptimize(report.objective_polished);
  }
  state.counters["outer_iterations"] = iterations;
}
BENCHMARK(BM_CsSolve)->Arg(512)->Arg(1024)->Arg(2048)
    ->Unit(benchmark::kMillisecond);

void BM_InnerSubproblem(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = ssal::gen_portfolio(n, 10, 1);
  ssal::InnerSolverOpts opts;
  ssal::InnerSolver solver(inst.spec, opts);
  const ssal::Vector y = ssal::Vector::Zero(n);
  const ssal::Vector lambda = ssal::Vector::Zero(n);
  const ssal::Vector warm = ssal::Vector::Constant(n, 1.0 / n);
  for (auto _ : state) {
    auto x = solver.solve(y, lambda, 1.0, warm);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_InnerSubproblem)->Arg(100)->Arg(200)->Arg(500)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "jensen/int_linalg.hpp"
#include "jensen/solver.hpp"
#include "jensen/sr2.hpp"
#include "jensen/verify.hpp"

using namespace jensen;

static void BM_SmithRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_int_distribution<long> entry(-9, 9);
  IntMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a.at(r, c) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithRandom)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_BuildSymmetric(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_symmetric(n));
}
BENCHMARK(BM_BuildSymmetric)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SolveSymmetric(benchmark::State& state) {
  const FiniteGroup g = build_symmetric(static_cast<unsigned>(state.range(0)));
  const AbelianTarget h({2, 4});
  for (auto _ : state) benchmark::DoNotOptimize(solve(g, h, EquationKind::kJ12).cardinality());
}
BENCHMARK(BM_SolveSymmetric)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_SolveDihedral(benchmark::State& state) {
  const FiniteGroup g = build_dihedral(static_cast<unsigned>(state.range(0)));
  const AbelianTarget h({2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(solve(g, h, EquationKind::kJ1).cardinality());
}
BENCHMARK(BM_SolveDihedral)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_Sr2Symmetric(benchmark::State& state) {
  const FiniteGroup g = build_symmetric(static_cast<unsigned>(state.range(0)));
  const InvolutionSet t = transpositions(g);
  for (auto _ : state) benchmark::DoNotOptimize(check_sr2(g, t).verdict);
}
BENCHMARK(BM_Sr2Symmetric)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_HomByGenerators(benchmark::State& state) {
  const FiniteGroup g = build_symmetric(static_cast<unsigned>(state.range(0)));
  const AbelianTarget h({2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(hom_space_by_generators(g, h).size());
}
BENCHMARK(BM_HomByGenerators)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_SwitchingCheck(benchmark::State& state) {
  const FiniteGroup g = build_symmetric(4);
  const AbelianTarget h({4});
  const GroupMap f = solve(g, h, EquationKind::kJ1).enumerate().back();
  for (auto _ : state) benchmark::DoNotOptimize(check_switching(f).passed());
}
BENCHMARK(BM_SwitchingCheck)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

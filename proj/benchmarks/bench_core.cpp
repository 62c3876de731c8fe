#include <benchmark/benchmark.h>

#include "penning/catalog.hpp"
#include "penning/fock.hpp"
#include "penning/operator_poly.hpp"
#include "penning/scanner.hpp"

using namespace penning;

static void BM_Multiply(benchmark::State& state) {
  const auto p = parse_poly("ad^2 b c + 3/2 a bd^3 - fd f c^2 + ad a");
  const auto q = parse_poly("a^2 bd cd + bd b f + 1/3 c^3 - b^2");
  for (auto _ : state) benchmark::DoNotOptimize(multiply(p, q));
}
BENCHMARK(BM_Multiply);

static void BM_Supercommutator(benchmark::State& state) {
  const auto p = parse_poly("ad^3 b^2 f");
  const auto q = parse_poly("a^2 bd^4 fd");
  for (auto _ : state) benchmark::DoNotOptimize(supercommutator(p, q));
}
BENCHMARK(BM_Supercommutator);

static void BM_JacobiOsp26(benchmark::State& state) {
  const auto set = catalog(CaseId::osp26);
  for (auto _ : state) benchmark::DoNotOptimize(graded_jacobi_check(set));
}
BENCHMARK(BM_JacobiOsp26)->Unit(benchmark::kMillisecond);

static void BM_ToMatrix(benchmark::State& state) {
  const FockBasis basis(static_cast<int>(state.range(0)));
  const auto p = parse_poly("ad^2 b c + a bd^2 fd + cd c f fd");
  for (auto _ : state) benchmark::DoNotOptimize(to_matrix(p, basis));
}
BENCHMARK(BM_ToMatrix)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMicrosecond);

static void BM_FindCrossings(benchmark::State& state) {
  const auto config = figure2_config();
  for (auto _ : state) benchmark::DoNotOptimize(find_crossings(config));
}
BENCHMARK(BM_FindCrossings)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

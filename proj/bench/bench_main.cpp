// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "dualdefect/cayley.hpp"
#include "dualdefect/corpus.hpp"
#include "dualdefect/structure.hpp"
#include "dualdefect/tangency.hpp"

using namespace dualdefect;

namespace {

PointConfig ex5_8() {
  return PointConfig::from_longs(6, {{0, 0, 0, 0, 0, 0},
                                     {1, 0, 0, 0, 0, 0},
                                     {0, 1, 0, 0, 0, 0},
                                     {0, 0, 1, 0, 0, 0},
                                     {0, 0, 0, 1, 0, 0},
                                     {0, 0, 0, 0, 1, 0},
                                     {0, 0, 0, 0, 0, 1},
                                     {-1, 2, 0, 0, -2, 1},
                                     {0, 0, -1, 2, -2, 1}});
}

PointConfig random_small(std::size_t n, std::size_t points) {
  std::mt19937_64 rng(7);
  return random_config(n, points, 2, rng);
}

PointConfig input(int which) {
  switch (which) {
    case 0:
      return ex5_8();
    case 1:
      return random_small(3, 10);
    default:
      return random_small(4, 11);
  }
}

void BM_EnumerateSerial(benchmark::State& state) {
  const PointConfig a = input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_simplex_projections_serial(a, 12));
}

void BM_EnumerateParallel(benchmark::State& state) {
  const PointConfig a = input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_simplex_projections(a, 12));
}

void BM_OracleSerial(benchmark::State& state) {
  SamplingPolicy policy;
  policy.trials = static_cast<unsigned>(state.range(0));
  const TangencyProblem p = TangencyProblem::make(ex5_8(), policy);
  for (auto _ : state) benchmark::DoNotOptimize(defect_oracle_serial(p));
}

void BM_OracleParallel(benchmark::State& state) {
  SamplingPolicy policy;
  policy.trials = static_cast<unsigned>(state.range(0));
  const TangencyProblem p = TangencyProblem::make(ex5_8(), policy);
  for (auto _ : state) benchmark::DoNotOptimize(defect_oracle(p));
}

void BM_ExhaustiveSerial(benchmark::State& state) {
  const PointConfig a = ex5_8();
  const StructureCertificate cert = structure_certificate(a);
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_check_serial(a, cert, 12));
}

void BM_ExhaustiveParallel(benchmark::State& state) {
  const PointConfig a = ex5_8();
  const StructureCertificate cert = structure_certificate(a);
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_check(a, cert, 12));
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Arg(3)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(3)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustiveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustiveParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

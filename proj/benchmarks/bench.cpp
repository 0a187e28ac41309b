#include <random>

#include <benchmark/benchmark.h>

#include "leeyang/geometry.hpp"
#include "leeyang/transfer_recursion.hpp"
#include "leeyang/zero_analysis.hpp"

using namespace leeyang;

static void BM_DenseChain(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto v = laplace_transform(RadialMeasure::sphere(1.0), 4, m);
  for (auto _ : state) benchmark::DoNotOptimize(phi_chain<double>(5, v, 0.5, m));
}
BENCHMARK(BM_DenseChain)->Arg(20)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_SparseStep(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto v = laplace_transform(RadialMeasure::sphere(1.0), 4, m).coefficients;
  const auto psi = psi_two<double>(v, v, 0.5, 4, m);
  for (auto _ : state) benchmark::DoNotOptimize(psi_step<double>(v, psi, 0.5, 4));
}
BENCHMARK(BM_SparseStep)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_ExactChain(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto v = laplace_transform_exact(RadialMeasure::sphere(1.0), 2, m);
  for (auto _ : state) benchmark::DoNotOptimize(phi_chain<Rational>(3, v, Rational(1, 2), m));
}
BENCHMARK(BM_ExactChain)->Arg(10)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_FindRoots(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto s = phi(3, 2, 0.5, RadialMeasure::sphere(1.0), m);
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(s.coefficients, m));
}
BENCHMARK(BM_FindRoots)->Arg(30)->Arg(50)->Unit(benchmark::kMicrosecond);

static void BM_Preimage(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  const GramTriple t{{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}};
  for (auto _ : state) benchmark::DoNotOptimize(preimage_pair(t));
}
BENCHMARK(BM_Preimage);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <vector>

#include "bmolab/randsign.hpp"
#include "bmolab/rng.hpp"

namespace {

std::vector<double> make_terms(int n, int d, std::uint64_t seed) {
  std::vector<double> flat(static_cast<std::size_t>(n) * d);
  for (std::size_t i = 0; i < flat.size(); ++i)
    flat[i] = 2.0 * bmolab::uniform01(seed, i) - 1.0;
  return flat;
}

}  // namespace

static void BM_ExactEnumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = 3;
  const bmolab::VectorSpaceDescriptor space{d, 2.5};
  const auto flat = make_terms(n, d, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bmolab::rademacher_expectation_p(flat, n, space, 3.0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactEnumeration)->DenseRange(8, 20, 2)->Complexity();

static void BM_MonteCarlo(benchmark::State& state) {
  const int n = 40;
  const int d = 3;
  const bmolab::VectorSpaceDescriptor space{d, 2.5};
  const auto flat = make_terms(n, d, 13);
  const auto samples = state.range(0);
  for (auto _ : state) {
    double se = 0.0;
    benchmark::DoNotOptimize(
        bmolab::rademacher_expectation_p_mc(flat, n, space, 3.0, samples, 7, &se));
  }
}
BENCHMARK(BM_MonteCarlo)->Range(1 << 10, 1 << 17);

static void BM_ScalarP2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bmolab::VectorSpaceDescriptor scalar{1, 2.0};
  const auto flat = make_terms(n, 1, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bmolab::rademacher_expectation_p(flat, n, scalar, 2.0));
  }
}
BENCHMARK(BM_ScalarP2)->DenseRange(8, 18, 2);

BENCHMARK_MAIN();

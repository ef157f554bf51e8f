#include <benchmark/benchmark.h>

#include "bmolab/wavelets.hpp"

namespace {
using namespace bmolab;
const Interval kWindow = Interval::of_ints(-8, 8);
}  // namespace

static void BM_CascadeConstruction(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(WaveletModel::daubechies(4, L, 6).support_length());
  }
}
BENCHMARK(BM_CascadeConstruction)->Arg(8)->Arg(10)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_WaveletTransform(benchmark::State& state) {
  const int L = 10;
  const auto psi = WaveletModel::daubechies(4, L, 6);
  const auto f = GridFunction::sample_scalar(kWindow, L, [](double x) {
    return x < 0 ? std::cos(3.0 * x) : 1.0 / (1.0 + x * x);
  });
  const auto candidates = dyadics_within(kWindow, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wavelet_coefficients(psi, f, candidates).size());
  }
  state.counters["coefficients"] = static_cast<double>(candidates.size());
}
BENCHMARK(BM_WaveletTransform)->Arg(-3)->Arg(-4)->Arg(-5)->Unit(benchmark::kMillisecond);

static void BM_DilateRender(benchmark::State& state) {
  const int L = 10;
  const auto psi = WaveletModel::daubechies(4, L, 6);
  const DyadicInterval J{static_cast<int>(state.range(0)), 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dilate_translate(psi, J, kWindow, L).cell_count());
  }
}
BENCHMARK(BM_DilateRender)->Arg(-6)->Arg(-2)->Arg(2);

BENCHMARK_MAIN();

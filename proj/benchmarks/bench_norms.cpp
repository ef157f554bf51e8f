#include <benchmark/benchmark.h>

#include "bmolab/norms.hpp"
#include "bmolab/rng.hpp"

namespace {

using namespace bmolab;

const Interval kWindow = Interval::of_ints(-8, 8);
constexpr int kL = 10;

CoefficientArray seeded_array(int count, int min_scale) {
  CoefficientArray a(VectorSpaceDescriptor{1, 2.0});
  std::uint64_t c = 0;
  while (static_cast<int>(a.size()) < count && c < 10000) {
    int j = min_scale + static_cast<int>(uniform01(5, c++) * (1 - min_scale + 1));
    j = std::min(j, 3);
    const std::int64_t half = std::int64_t{1} << (3 - j);
    const auto k = -half + static_cast<std::int64_t>(uniform01(5, c++) * (2.0 * half));
    a.set_scalar({j, k}, 2.0 * uniform01(5, c++) - 1.0);
  }
  return a;
}

std::vector<Interval> family(int min_scale) {
  std::vector<Interval> f;
  for (const auto& j : dyadics_within(kWindow, min_scale))
    f.push_back(Interval::from_dyadic(j));
  f.push_back(kWindow);
  return f;
}

}  // namespace

static void BM_CarlesonNorm(benchmark::State& state) {
  const auto w = WeightModel::power(kWindow, kL, 0.5, 0.0);
  const auto rho = GrowthModel::constant(1.0);
  const auto a = seeded_array(static_cast<int>(state.range(0)), -5);
  const auto fam = family(-2);
  CarlesonOptions opts;
  opts.p = 2.0;
  opts.min_scale = -5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(carleson_norm(a, w, rho, fam, opts).value);
  }
}
BENCHMARK(BM_CarlesonNorm)->Arg(10)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_BmoNorm(benchmark::State& state) {
  const auto w = WeightModel::constant(kWindow, kL, 1.0);
  const auto rho = GrowthModel::constant(1.0);
  const auto f = GridFunction::sample_scalar(kWindow, kL, [](double x) {
    return (x < 0 ? 1.0 : -0.5) + 0.25 * std::sin(5.0 * x);
  });
  // Families of growing size: endpoints on 2^k coarse grids.
  std::vector<Interval> fam;
  const int coarse = static_cast<int>(state.range(0));
  const std::int64_t pts = std::int64_t{1} << coarse;
  const std::int64_t stride = (kWindow.right_ticks(kL) - kWindow.left_ticks(kL)) / pts;
  for (std::int64_t i = 0; i < pts; ++i)
    for (std::int64_t j = i + 1; j <= pts; ++j)
      fam.push_back(Interval(kWindow.left_ticks(kL) + i * stride,
                             kWindow.left_ticks(kL) + j * stride, kL));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bmo_norm(f, w, rho, fam).value);
  }
  state.counters["intervals"] = static_cast<double>(fam.size());
}
BENCHMARK(BM_BmoNorm)->Arg(4)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_ScalarSquareFn(benchmark::State& state) {
  const auto w = WeightModel::constant(kWindow, kL, 1.0);
  const auto rho = GrowthModel::constant(1.0);
  const auto a = seeded_array(static_cast<int>(state.range(0)), -6);
  const auto fam = family(-2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(carleson_scalar_squarefn(a, w, rho, 3.0, fam).value);
  }
}
BENCHMARK(BM_ScalarSquareFn)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

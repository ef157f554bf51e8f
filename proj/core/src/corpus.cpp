#include "bmolab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bmolab/rng.hpp"

namespace bmolab {

namespace {

double uniform_pm1(std::uint64_t seed, std::uint64_t counter) {
  return 2.0 * uniform01(seed, counter) - 1.0;
}

GridFunction random_step(const ExperimentConfig& cfg, std::uint64_t seed, int dimension,
                         double exponent) {
  const Interval window = cfg.window.interval();
  const int L = cfg.window.resolution_log2;
  const int bs = cfg.corpus.step_scale;
  const std::int64_t blocks =
      (window.right_ticks(L) - window.left_ticks(L)) >> (bs + L);
  const double block_width = std::ldexp(1.0, bs);
  const double left = window.left();
  const VectorSpaceDescriptor space{dimension, exponent};
  return GridFunction::sample(window, L, space, [&](double x, std::span<double> out) {
    auto b = static_cast<std::int64_t>(std::floor((x - left) / block_width));
    b = std::clamp<std::int64_t>(b, 0, blocks - 1);
    for (int k = 0; k < dimension; ++k)
      out[k] = uniform_pm1(seed, static_cast<std::uint64_t>(b) * 31 + k);
  });
}

GridFunction random_wavelet_sum(const ExperimentConfig& cfg, const WaveletModel& psi,
                                std::uint64_t seed) {
  const Interval window = cfg.window.interval();
  const int L = cfg.window.resolution_log2;
  auto zero = GridFunction::zero(window, L, VectorSpaceDescriptor{1, 2.0});
  std::vector<double> samples(zero.data().begin(), zero.data().end());
  const int terms = 6;
  const std::int64_t base = window.left_ticks(L);
  const std::int64_t end = window.right_ticks(L);
  const int M = cfg.window.m_log2;
  for (int t = 0; t < terms; ++t) {
    int j = -3 + static_cast<int>(uniform01(seed, 2 * t) * 5.0);  // scales -3..1
    j = std::min(j, M - 1);
    // k with the support [k 2^j, (k + N - 1) 2^j) inside the window.
    const std::int64_t k_min = -(std::int64_t{1} << (M - j));
    const std::int64_t k_count = std::max<std::int64_t>(
        1, (std::int64_t{2} << (M - j)) - psi.support_length() + 1);
    const auto k = k_min + static_cast<std::int64_t>(uniform01(seed, 2 * t + 1) *
                                                     static_cast<double>(k_count));
    const DyadicInterval J{j, k};
    const double c = 2.0 * uniform_pm1(seed, 100 + t);
    auto [lo, hi] = psi.dilated_support_ticks(J, L);
    lo = std::max(lo, base);
    hi = std::min(hi, end);
    for (std::int64_t tick = lo; tick < hi; ++tick)
      samples[static_cast<std::size_t>(tick - base)] +=
          c * psi.dilated_cell_average(J, L, tick);
  }
  return GridFunction(window, L, VectorSpaceDescriptor{1, 2.0}, std::move(samples));
}

GridFunction log_profile(const ExperimentConfig& cfg, std::uint64_t seed) {
  // Cumulative Haar sums along a nested dyadic chain: bounded mean oscillation
  // with an unbounded profile, the classical BMO-hard shape.
  const Interval window = cfg.window.interval();
  const int L = cfg.window.resolution_log2;
  const int depth = std::min(L - 1, 9);
  // Chain anchored at a random grid point of scale 0.
  const std::int64_t cells0 = std::int64_t{1} << (cfg.window.m_log2 + 1);
  const std::int64_t anchor = window.left_ticks(0) +
                              static_cast<std::int64_t>(uniform01(seed, 0) *
                                                        static_cast<double>(cells0));
  std::vector<DyadicInterval> chain;
  DyadicInterval J{0, anchor};
  chain.push_back(J);
  for (int i = 1; i <= depth; ++i) {
    J = uniform01(seed, i) < 0.5 ? J.left_child() : J.right_child();
    chain.push_back(J);
  }
  std::vector<double> sigma;
  for (int i = 0; i <= depth; ++i) sigma.push_back(uniform01(seed, 1000 + i) < 0.5 ? -1.0 : 1.0);
  return GridFunction::sample_scalar(window, L, [&](double x) {
    double v = 0.0;
    for (int i = 0; i <= depth; ++i) {
      const auto& Ji = chain[static_cast<std::size_t>(i)];
      const double l = Ji.left(), r = Ji.right(), m = Ji.centre();
      if (x >= l && x < m)
        v += sigma[static_cast<std::size_t>(i)];
      else if (x >= m && x < r)
        v -= sigma[static_cast<std::size_t>(i)];
    }
    return v;
  });
}

}  // namespace

std::vector<CorpusFunction> build_function_corpus(const ExperimentConfig& cfg) {
  std::vector<CorpusFunction> out;
  const auto psi = cfg.wavelet.build(cfg.window.resolution_log2);
  int index = 0;
  for (int i = 0; i < cfg.corpus.step_functions; ++i, ++index)
    out.push_back({"step-" + std::to_string(i),
                   random_step(cfg, derive_seed(cfg.seed, index), 1, 2.0)});
  for (int i = 0; i < cfg.corpus.wavelet_sums; ++i, ++index)
    out.push_back({"wsum-" + std::to_string(i),
                   random_wavelet_sum(cfg, psi, derive_seed(cfg.seed, index))});
  for (int i = 0; i < cfg.corpus.log_profiles; ++i, ++index)
    out.push_back({"logp-" + std::to_string(i), log_profile(cfg, derive_seed(cfg.seed, index))});
  for (int i = 0; i < cfg.corpus.vector_functions; ++i, ++index)
    out.push_back({"vstep-" + std::to_string(i),
                   random_step(cfg, derive_seed(cfg.seed, index), cfg.corpus.dimension,
                               cfg.corpus.exponent)});
  return out;
}

std::vector<CorpusArray> build_array_corpus(const ExperimentConfig& cfg) {
  std::vector<CorpusArray> out;
  const Interval window = cfg.window.interval();
  const int top_scale = 1;
  int index = 1000;

  for (int i = 0; i < cfg.corpus.arrays; ++i, ++index) {
    const std::uint64_t seed = derive_seed(cfg.seed, index);
    const bool vector_valued = (i % 3 == 2);
    const VectorSpaceDescriptor space =
        vector_valued ? VectorSpaceDescriptor{cfg.corpus.dimension, cfg.corpus.exponent}
                      : VectorSpaceDescriptor{1, 2.0};
    CoefficientArray a(space);
    std::uint64_t ctr = 0;
    std::set<std::pair<int, std::int64_t>> used;
    const int M = cfg.window.m_log2;
    const int ms = cfg.corpus.array_min_scale;
    while (static_cast<int>(a.size()) < cfg.corpus.array_support && ctr < 10000) {
      int j = ms + static_cast<int>(uniform01(seed, ctr++) *
                                    static_cast<double>(top_scale - ms + 1));
      j = std::min(j, M);
      // J = 2^j [k, k+1) inside the window: k in [-2^{M-j}, 2^{M-j}).
      const std::int64_t half = std::int64_t{1} << (M - j);
      const auto k = -half + static_cast<std::int64_t>(uniform01(seed, ctr++) *
                                                       static_cast<double>(2 * half));
      if (!used.insert({j, k}).second) continue;
      std::vector<double> v(static_cast<std::size_t>(space.dimension));
      for (int d = 0; d < space.dimension; ++d)
        v[static_cast<std::size_t>(d)] = uniform_pm1(seed, ctr++);
      a.set({j, k}, v);
    }
    out.push_back({"sparse-" + std::to_string(i), std::move(a)});
  }

  for (int i = 0; i < cfg.corpus.dense_arrays; ++i, ++index) {
    const std::uint64_t seed = derive_seed(cfg.seed, index);
    CoefficientArray a(VectorSpaceDescriptor{1, 2.0});
    std::uint64_t ctr = 0;
    // Every dyadic down to the corpus floor, with per-scale decay 2^{0.7 j}
    // so the Carleson mass of the fine scales converges geometrically.
    for (const auto& J : dyadics_within(window, cfg.corpus.array_min_scale)) {
      if (J.scale > top_scale) continue;
      const double amp = std::pow(2.0, 0.7 * J.scale);
      a.set_scalar(J, amp * uniform_pm1(seed, ctr++));
    }
    out.push_back({"dense-" + std::to_string(i), std::move(a)});
  }
  return out;
}

}  // namespace bmolab

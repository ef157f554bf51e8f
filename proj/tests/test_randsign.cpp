#include <doctest.h>

#include <cmath>
#include <random>

#include "bmolab/randsign.hpp"

using namespace bmolab;

namespace {

// Independent oracle: direct enumeration over all 2^n sign patterns, no
// shared code with the engine's Gray-code path.
double oracle_moment(const std::vector<std::vector<double>>& terms,
                     const VectorSpaceDescriptor& space, double p) {
  const int n = static_cast<int>(terms.size());
  const int d = space.dimension;
  double acc = 0.0;
  for (std::uint64_t pat = 0; pat < (std::uint64_t{1} << n); ++pat) {
    std::vector<double> s(d, 0.0);
    for (int i = 0; i < n; ++i) {
      const double sign = (pat >> i) & 1 ? 1.0 : -1.0;
      for (int k = 0; k < d; ++k) s[k] += sign * terms[i][k];
    }
    acc += std::pow(space.norm(s), p);
  }
  return std::pow(acc / std::ldexp(1.0, n), 1.0 / p);
}

std::vector<std::vector<double>> random_terms(std::mt19937_64& rng, int n, int d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> terms(n, std::vector<double>(d));
  for (auto& t : terms)
    for (auto& v : t) v = u(rng);
  return terms;
}

}  // namespace

TEST_CASE("moment: spec examples") {
  const VectorSpaceDescriptor l2{2, 2.0};

  // Single term: |eps| = 1, so the moment is ||xi|| for every p.
  const auto single = SignSeries::from_vectors(l2, {{3.0, -4.0}});
  for (double p : {1.0, 2.0, 3.5}) CHECK(single.moment(p).value == doctest::Approx(5.0).epsilon(1e-14));

  // Two orthogonal unit vectors at p = 2: sqrt(2).
  const auto ortho = SignSeries::from_vectors(l2, {{1.0, 0.0}, {0.0, 1.0}});
  CHECK(ortho.moment(2.0).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  // lambda = (1,1,1), p = 4: full 8-pattern enumeration gives (E|S|^4)^{1/4}.
  const VectorSpaceDescriptor scalar{1, 2.0};
  const std::vector<std::vector<double>> ones = {{1.0}, {1.0}, {1.0}};
  const double expect = oracle_moment(ones, scalar, 4.0);
  CHECK(expect == doctest::Approx(std::pow(21.0, 0.25)).epsilon(1e-14));
  CHECK(SignSeries::from_vectors(scalar, ones).moment(4.0).value ==
        doctest::Approx(expect).epsilon(1e-13));

  CHECK_THROWS_AS(SignSeries::from_vectors(scalar, {}), DomainError);
}

TEST_CASE("moment agrees with the brute-force oracle on random cases") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 30; ++it) {
    const int n = 1 + static_cast<int>(rng() % 9);
    const int d = 1 + static_cast<int>(rng() % 4);
    const double r = (it % 3 == 0) ? 1.5 : (it % 3 == 1 ? 2.0 : 4.0);
    const VectorSpaceDescriptor space{d, r};
    const auto terms = random_terms(rng, n, d);
    const double p = 1.0 + (it % 4);
    const auto est = SignSeries::from_vectors(space, terms).moment(p);
    CHECK(est.exact);
    CHECK(est.value == doctest::Approx(oracle_moment(terms, space, p)).epsilon(1e-12));
  }
}

TEST_CASE("moment dominates the largest single term (contraction consequence)") {
  std::mt19937_64 rng(103);
  const VectorSpaceDescriptor space{3, 1.5};
  for (int it = 0; it < 20; ++it) {
    const auto terms = random_terms(rng, 6, 3);
    double biggest = 0.0;
    for (const auto& t : terms) biggest = std::max(biggest, space.norm(t));
    const double p = 1.0 + 2.0 * (it % 3);
    CHECK(SignSeries::from_vectors(space, terms).moment(p).value >= biggest - 1e-12);
  }
}

TEST_CASE("moment symmetry: negating any subset of terms leaves it unchanged") {
  std::mt19937_64 rng(105);
  const VectorSpaceDescriptor space{2, 4.0};
  const auto terms = random_terms(rng, 9, 2);
  const double base = SignSeries::from_vectors(space, terms).moment(3.0).value;
  for (std::uint64_t mask : {0x1ULL, 0x15ULL, 0x1FFULL, 0x92ULL}) {
    auto negated = terms;
    for (int i = 0; i < 9; ++i)
      if ((mask >> i) & 1)
        for (auto& v : negated[i]) v = -v;
    const double m = SignSeries::from_vectors(space, negated).moment(3.0).value;
    CHECK(m == doctest::Approx(base).epsilon(1e-13));
  }
}

TEST_CASE("scalar p=2 identity in a Hilbert descriptor: moment^2 = sum of squares") {
  std::mt19937_64 rng(107);
  const VectorSpaceDescriptor space{3, 2.0};
  const auto terms = random_terms(rng, 11, 3);
  double ss = 0.0;
  for (const auto& t : terms) ss += t[0] * t[0] + t[1] * t[1] + t[2] * t[2];
  const double m = SignSeries::from_vectors(space, terms).moment(2.0).value;
  CHECK(m * m == doctest::Approx(ss).epsilon(1e-12));
}

TEST_CASE("moment monotonicity in p (exact mode)") {
  std::mt19937_64 rng(109);
  const VectorSpaceDescriptor space{2, 2.5};
  for (int it = 0; it < 10; ++it) {
    const auto s = SignSeries::from_vectors(space, random_terms(rng, 8, 2));
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
      const double m = s.moment(p).value;
      CHECK(m >= prev * (1.0 - 1e-13));
      prev = m;
    }
  }
}

TEST_CASE("khintchine_compare: spec examples plus frozen oracle value") {
  // p = 2: independence makes the ratio exactly 1.
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int it = 0; it < 10; ++it) {
    std::vector<double> lambda(1 + it);
    for (auto& l : lambda) l = u(rng);
    CHECK(khintchine_compare(lambda, 2.0).ratio == doctest::Approx(1.0).epsilon(1e-13));
  }

  // Single coefficient: ratio 1 for every p.
  CHECK(khintchine_compare(std::vector<double>{0.7}, 3.0).ratio ==
        doctest::Approx(1.0).epsilon(1e-14));

  // Ones(10), p = 1: E|S| = 2520/1024 by direct enumeration, so the ratio is
  // (2520/1024)/sqrt(10).  (The sqrt(2/pi) value is only the n -> inf limit.)
  const std::vector<double> ones(10, 1.0);
  const double oracle = (2520.0 / 1024.0) / std::sqrt(10.0);
  const auto res = khintchine_compare(ones, 1.0);
  CHECK(res.ratio == doctest::Approx(oracle).epsilon(1e-13));
  CHECK(res.ratio > 0.7);
  CHECK(res.ratio < 1.0);
}

TEST_CASE("contraction principle: trivial and random exact cases") {
  const VectorSpaceDescriptor space{4, 1.5};
  std::mt19937_64 rng(113);
  const auto terms = random_terms(rng, 10, 4);
  const auto series = SignSeries::from_vectors(space, terms);

  std::vector<double> all_ones(10, 1.0);
  const auto same = contraction_check(series, all_ones, 3.0);
  CHECK(same.lhs == same.rhs);
  CHECK(same.pass);

  std::vector<double> zeros(10, 0.0);
  const auto zero = contraction_check(series, zeros, 3.0);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.pass);

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 25; ++it) {
    std::vector<double> lambda(10);
    for (auto& l : lambda) l = u(rng);
    const double p = 1.0 + 2.0 * u(rng) + 2.0;
    const auto res = contraction_check(series, lambda, p);
    CHECK(res.exact);
    CHECK(res.pass);  // outright lhs <= rhs in exact mode
  }

  std::vector<double> bad(10, 0.5);
  bad[3] = 1.5;
  CHECK_THROWS_AS(contraction_check(series, bad, 2.0), PreconditionError);
}

TEST_CASE("kahane_ratio: identity cases and exact-mode bounds") {
  const VectorSpaceDescriptor l2{2, 2.0};
  const auto single = SignSeries::from_vectors(l2, {{1.0, 2.0}});
  for (const auto& [p, r] : {std::pair{1.0, 2.0}, {2.0, 4.0}, {1.0, 4.0}})
    CHECK(kahane_ratio(single, p, r).ratio == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(115);
  const auto series = SignSeries::from_vectors(l2, random_terms(rng, 12, 2));
  CHECK(kahane_ratio(series, 3.0, 3.0).ratio == doctest::Approx(1.0).epsilon(1e-14));

  // p = 4 over r = 2: within [1, sqrt(3)] for scalar-like Gaussian concentration.
  for (int it = 0; it < 10; ++it) {
    const auto s = SignSeries::from_vectors(VectorSpaceDescriptor{1, 2.0},
                                            random_terms(rng, 12, 1));
    const double ratio = kahane_ratio(s, 4.0, 2.0).ratio;
    CHECK(ratio >= 1.0 - 1e-12);
    CHECK(ratio <= std::sqrt(3.0) + 1e-9);
  }
}

TEST_CASE("stein averaging: constants, zero-mean, and p=2 projection") {
  const int L = 8;
  const Interval I = Interval::of_ints(0, 2);
  const std::vector<DyadicInterval> chain = {{1, 0}, {0, 0}, {-1, 0}, {-2, 0}};

  // Constant f_J: averaging is the identity, lhs = rhs.
  std::vector<GridFunction> constants;
  double c = 0.4;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    constants.push_back(GridFunction::sample_scalar(I, L, [c](double) { return c; }));
    c += 0.3;
  }
  const auto same = stein_averaging_check(constants, chain, I, 2.5);
  CHECK(same.lhs == doctest::Approx(same.rhs).epsilon(1e-13));

  // One oscillating term with zero mean on its interval: lhs = 0 <= rhs.
  const std::vector<DyadicInterval> one = {{1, 0}};
  std::vector<GridFunction> osc;
  osc.push_back(GridFunction::sample_scalar(I, L, [](double x) { return x < 1.0 ? 1.0 : -1.0; }));
  const auto zero = stein_averaging_check(osc, one, I, 2.0);
  CHECK(zero.lhs <= 1e-14);
  CHECK(zero.rhs > 0.0);

  // Scalar p=2: conditional averaging is an L^2 projection, ratio <= 1.
  std::mt19937_64 rng(117);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 5; ++it) {
    std::vector<GridFunction> fs;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const double a = u(rng), b = u(rng), w0 = 3.0 + 2.0 * u(rng);
      fs.push_back(GridFunction::sample_scalar(
          I, L, [a, b, w0](double x) { return a + b * std::sin(w0 * x); }));
    }
    const auto res = stein_averaging_check(fs, chain, I, 2.0);
    CHECK(res.ratio <= 1.0 + 1e-9);
  }

  // Non-nested lists are rejected.
  const std::vector<DyadicInterval> broken = {{0, 0}, {0, 1}};
  std::vector<GridFunction> two;
  two.push_back(constants[0]);
  two.push_back(constants[1]);
  CHECK_THROWS_AS(stein_averaging_check(two, broken, I, 2.0), PreconditionError);
}

TEST_CASE("monte carlo: deterministic, honest errors, 4-sigma agreement") {
  std::mt19937_64 rng(119);
  const VectorSpaceDescriptor space{2, 2.0};
  const auto terms = random_terms(rng, 10, 2);
  const auto series = SignSeries::from_vectors(space, terms);

  MomentOptions forced;
  forced.exact_threshold = 0;  // force MC even for small n
  forced.mc_samples = 100000;
  forced.seed = 7;

  const auto exact = series.moment(3.0);
  const auto mc1 = series.moment(3.0, forced);
  const auto mc2 = series.moment(3.0, forced);
  CHECK(mc1.value == mc2.value);  // counter-based generator: bitwise repeatable
  CHECK(!mc1.exact);
  CHECK(mc1.std_error > 0.0);
  CHECK(std::abs(mc1.value - exact.value) <= 4.0 * mc1.std_error);

  forced.seed = 8;
  const auto mc3 = series.moment(3.0, forced);
  CHECK(mc3.value != mc1.value);  // seed moves the estimate
  CHECK(std::abs(mc3.value - exact.value) <= 4.0 * mc3.std_error);

  const auto text = mc3.to_json();
  CHECK(text.find("\"mode\":\"monte-carlo\"") != std::string::npos);
  CHECK(text.find("\"samples\":100000") != std::string::npos);
  CHECK(text.find("\"std_error\"") != std::string::npos);
  CHECK(exact.to_json().find("\"mode\":\"exact\"") != std::string::npos);
}

TEST_CASE("function-mode series integrate the expectation over the grid") {
  const int L = 6;
  const Interval I = Interval::of_ints(0, 1);
  // Two disjoint indicator-like summands: E||.||^2 adds their squares.
  auto f1 = GridFunction::sample_scalar(I, L, [](double x) { return x < 0.5 ? 2.0 : 0.0; });
  auto f2 = GridFunction::sample_scalar(I, L, [](double x) { return x < 0.5 ? 0.0 : 3.0; });
  std::vector<std::pair<DyadicInterval, GridFunction>> terms;
  terms.emplace_back(DyadicInterval{-1, 0}, f1);
  terms.emplace_back(DyadicInterval{-1, 1}, f2);
  const auto series = SignSeries::from_functions(std::move(terms));
  // int E|eps1 f1 + eps2 f2|^2 = int (f1^2 + f2^2) = 4/2 + 9/2.
  CHECK(series.moment(2.0).value == doctest::Approx(std::sqrt(6.5)).epsilon(1e-13));

  // Duplicate labels are rejected.
  std::vector<std::pair<DyadicInterval, GridFunction>> dup;
  dup.emplace_back(DyadicInterval{0, 0}, f1);
  dup.emplace_back(DyadicInterval{0, 0}, f2);
  CHECK_THROWS_AS(SignSeries::from_functions(std::move(dup)), DomainError);
}

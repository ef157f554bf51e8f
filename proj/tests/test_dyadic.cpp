#include <doctest.h>

#include <cmath>
#include <random>

#include "bmolab/dyadic.hpp"
#include "bmolab/grid.hpp"

using namespace bmolab;

TEST_CASE("dyadic interval arithmetic is exact") {
  const DyadicInterval J{0, 0};  // [0,1)
  CHECK(J.length() == 1.0);
  CHECK(J.left() == 0.0);
  CHECK(J.right() == 1.0);
  CHECK(J.parent().contains(J));
  CHECK(J.contains(J.left_child()));
  CHECK(J.contains(J.right_child()));
  CHECK(!J.left_child().contains(J));

  const DyadicInterval neg{-2, -5};  // [-5/4, -1)
  CHECK(neg.left() == doctest::Approx(-1.25));
  CHECK(neg.parent().contains(neg));
  CHECK(DyadicInterval{0, -2}.contains(neg));
  CHECK(!DyadicInterval{0, -1}.contains(neg));
}

TEST_CASE("interval normalization and exact predicates") {
  const Interval a(0, 2, 1);  // [0,1) stored at level 1
  CHECK(a == Interval::of_ints(0, 1));
  CHECK(a.level() == 0);

  const Interval b(1, 3, 2);  // [1/4, 3/4)
  CHECK(b.left() == 0.25);
  CHECK(b.right() == 0.75);
  CHECK(Interval::of_ints(0, 1).contains(b));
  CHECK(!b.contains(Interval::of_ints(0, 1)));
  CHECK(b.intersects(Interval(1, 2, 1)));
  CHECK(!b.intersects(Interval(3, 4, 2)));

  CHECK_THROWS_AS(Interval(1, 1, 0), DomainError);
  CHECK_THROWS_AS(Interval(2, 1, 0), DomainError);
}

TEST_CASE("concentric dilation is exact and closed under the type") {
  const Interval I(1, 3, 2);  // [1/4, 3/4), centre 1/2
  const Interval twoI = I.dilated(1);
  CHECK(twoI.left() == 0.0);
  CHECK(twoI.right() == 1.0);
  CHECK(I.dilated(0) == I);
  const Interval fourI = I.dilated(2);
  CHECK(fourI.left() == -0.5);
  CHECK(fourI.right() == 1.5);
  CHECK(fourI.centre() == I.centre());
}

TEST_CASE("dyadics_within: spec examples") {
  // [0,1) down to halves: {[0,1), [0,1/2), [1/2,1)}.
  const auto a = dyadics_within(Interval::of_ints(0, 1), -1);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == DyadicInterval{0, 0});
  CHECK(a[1] == DyadicInterval{-1, 0});
  CHECK(a[2] == DyadicInterval{-1, 1});

  // [1/4, 3/4): no half-length dyadic fits; quarters only.
  const auto b = dyadics_within(Interval(1, 3, 2), -2);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == DyadicInterval{-2, 1});
  CHECK(b[1] == DyadicInterval{-2, 2});

  // Count 2^{L+1} - 1 on the unit interval, verified by brute enumeration.
  const int L = 4;
  const auto c = dyadics_within(Interval::of_ints(0, 1), -L);
  int brute = 0;
  for (int j = 0; j >= -L; --j)
    for (std::int64_t k = 0; k < (std::int64_t{1} << -j); ++k) ++brute;
  CHECK(static_cast<int>(c.size()) == brute);
  CHECK(static_cast<int>(c.size()) == (1 << (L + 1)) - 1);
}

TEST_CASE("dyadics_within: nesting property") {
  const Interval I = Interval::of_ints(-2, 0);
  const auto whole = dyadics_within(I, -3);
  const auto left = dyadics_within(Interval::of_ints(-2, -1), -3);
  const auto right = dyadics_within(Interval::of_ints(-1, 0), -3);
  CHECK(whole.size() == 1 + left.size() + right.size());
  for (const auto& J : whole) CHECK(I.contains(J));
}

TEST_CASE("average: spec examples") {
  const Interval I = Interval::of_ints(0, 1);
  const int L = 8;
  const VectorSpaceDescriptor vec3{3, 2.0};
  const double cval[3] = {1.5, -2.0, 0.25};
  const auto constant = GridFunction::constant(I, L, vec3, cval);
  const auto avg = average(constant, I);
  CHECK(avg[0] == 1.5);
  CHECK(avg[1] == -2.0);
  CHECK(avg[2] == 0.25);

  // Haar has zero mean over its interval.
  const auto haar = GridFunction::sample_scalar(I, L, [](double x) { return x < 0.5 ? 1.0 : -1.0; });
  CHECK(average(haar, I)[0] == 0.0);

  // f(x) = x: midpoint mean is exactly 1/2.
  const auto id = GridFunction::sample_scalar(I, L, [](double x) { return x; });
  CHECK(average(id, I)[0] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(average(id, Interval::of_ints(0, 2)), DomainError);
}

TEST_CASE("integrate_norm: spec examples and additivity") {
  const Interval I = Interval::of_ints(0, 1);
  const int L = 8;
  const auto zero = GridFunction::zero(I, L, VectorSpaceDescriptor{2, 3.0});
  CHECK(integrate_norm(zero, I, 1.0) == 0.0);
  CHECK(integrate_norm(zero, I, 4.0) == 0.0);

  const double e1[2] = {1.0, 0.0};
  const auto unit = GridFunction::constant(I, L, VectorSpaceDescriptor{2, 3.0}, e1);
  CHECK(integrate_norm(unit, I, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

  const auto haar = GridFunction::sample_scalar(I, L, [](double x) { return x < 0.5 ? 1.0 : -1.0; });
  CHECK(integrate_norm(haar, I, 2.0) == doctest::Approx(1.0).epsilon(1e-14));

  // Additivity over adjacent disjoint intervals.
  const auto f = GridFunction::sample_scalar(I, L, [](double x) { return std::sin(7 * x) + 2.0; });
  const Interval left(0, 1, 1), right(1, 2, 1);
  const double whole = integrate_norm(f, I, 1.5);
  const double parts = integrate_norm(f, left, 1.5) + integrate_norm(f, right, 1.5);
  CHECK(whole == doctest::Approx(parts).epsilon(1e-12));

  // Negative density rejected.
  const auto bad = GridFunction::sample_scalar(I, L, [](double x) { return x - 0.5; });
  CHECK_THROWS_AS(integrate_norm(f, I, 1.0, &bad), DomainError);
}

TEST_CASE("non-aligned intervals are rejected, not snapped") {
  const Interval I = Interval::of_ints(0, 1);
  const auto f = GridFunction::sample_scalar(I, 3, [](double x) { return x; });
  // Endpoints at level 5 are off the 2^-3 grid.
  CHECK_THROWS_AS(average(f, Interval(1, 32, 5)), DomainError);
}

TEST_CASE("l^r triangle inequality spot-check") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double r : {1.5, 2.0, 4.0}) {
    const VectorSpaceDescriptor space{5, r};
    for (int it = 0; it < 200; ++it) {
      std::vector<double> x(5), y(5), s(5);
      for (int k = 0; k < 5; ++k) {
        x[k] = u(rng);
        y[k] = u(rng);
        s[k] = x[k] + y[k];
      }
      CHECK(space.norm(s) <= space.norm(x) + space.norm(y) + 1e-12);
    }
  }
}

TEST_CASE("exactness for piecewise-constant functions on aligned intervals") {
  // Grid-aligned steps are represented exactly, so integrals are analytic.
  const Interval W = Interval::of_ints(-2, 2);
  const int L = 6;
  const auto f = GridFunction::sample_scalar(W, L, [](double x) { return x < 0 ? 3.0 : -1.0; });
  CHECK(integrate_norm(f, W, 1.0) == doctest::Approx(8.0).epsilon(1e-14));
  const auto avg = average(f, W);
  CHECK(avg[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate_norm(f, Interval::of_ints(-2, 0), 2.0) ==
        doctest::Approx(18.0).epsilon(1e-14));
}

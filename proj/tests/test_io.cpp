#include <doctest.h>

#include <cstring>
#include <random>
#include <sstream>

#include "bmolab/io.hpp"

using namespace bmolab;

namespace {

GridFunction random_function(std::mt19937_64& rng, int d, double r) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const Interval domain = Interval::of_ints(-2, 2);
  const int L = 5;
  const std::int64_t cells = domain.right_ticks(L) - domain.left_ticks(L);
  std::vector<double> samples(static_cast<std::size_t>(cells) * d);
  for (auto& v : samples) v = u(rng);
  return GridFunction(domain, L, VectorSpaceDescriptor{d, r}, std::move(samples));
}

bool bitwise_equal(const GridFunction& a, const GridFunction& b) {
  if (!(a.domain() == b.domain()) || a.resolution_log2() != b.resolution_log2() ||
      !(a.space() == b.space()))
    return false;
  const auto da = a.data(), db = b.data();
  if (da.size() != db.size()) return false;
  for (std::size_t i = 0; i < da.size(); ++i) {
    // Bit-level comparison: NaNs never appear, +-0 must round-trip as stored.
    if (std::memcmp(&da[i], &db[i], sizeof(double)) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("gridfunction binary round trip is bit-exact") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 20; ++it) {
    const auto f = random_function(rng, 1 + it % 4, 1.5 + 0.5 * (it % 3));
    std::stringstream ss;
    write_gridfunction(ss, f);
    const auto g = read_gridfunction(ss);
    CHECK(bitwise_equal(f, g));
  }
}

TEST_CASE("gridfunction csv round trip is bit-exact (hexfloat)") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 10; ++it) {
    const auto f = random_function(rng, 1 + it % 3, 2.0);
    std::stringstream ss;
    write_gridfunction_csv(ss, f);
    const auto g = read_gridfunction_csv(ss);
    CHECK(bitwise_equal(f, g));
  }
}

TEST_CASE("truncated stream is rejected") {
  std::mt19937_64 rng(13);
  const auto f = random_function(rng, 2, 2.0);
  std::stringstream ss;
  write_gridfunction(ss, f);
  const std::string full = ss.str();
  std::stringstream cut(full.substr(0, full.size() / 2));
  CHECK_THROWS_AS(read_gridfunction(cut), DomainError);
  std::stringstream bad("XXXX" + full.substr(4));
  CHECK_THROWS_AS(read_gridfunction(bad), DomainError);
}

TEST_CASE("coefficient array json round trip") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  CoefficientArray a(VectorSpaceDescriptor{3, 2.5}, "synthetic");
  for (int i = 0; i < 25; ++i) {
    const DyadicInterval J{-(i % 6), (i * 7) % 40 - 20};
    const std::vector<double> v = {u(rng), u(rng), u(rng)};
    a.set(J, v);
  }
  const auto text = coefficient_array_to_json(a);
  const auto b = coefficient_array_from_json(text);
  CHECK(b.space() == a.space());
  CHECK(b.size() == a.size());
  for (const auto& [J, v] : a) {
    REQUIRE(b.contains(J));
    const auto w = b.at(J);
    for (std::size_t k = 0; k < v.size(); ++k) CHECK(w[k] == v[k]);
  }
}

TEST_CASE("coefficient array enforces dimension and missing keys throw") {
  CoefficientArray a(VectorSpaceDescriptor{2, 2.0});
  const std::vector<double> wrong = {1.0};
  CHECK_THROWS_AS(a.set({0, 0}, wrong), DomainError);
  CHECK_THROWS_AS(a.at({0, 0}), DomainError);
  CHECK(!a.min_scale().has_value());
  const std::vector<double> ok = {1.0, -1.0};
  a.set({-3, 5}, ok);
  a.set({2, -1}, ok);
  CHECK(a.min_scale() == -3);
}

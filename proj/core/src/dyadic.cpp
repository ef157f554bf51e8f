#include "bmolab/dyadic.hpp"

#include <algorithm>
#include <sstream>

namespace bmolab {

namespace {

constexpr int kMaxLevel = 48;

// floor(a / 2^s) for possibly negative a.
std::int64_t floor_shift(std::int64_t a, int s) { return a >> s; }

// ceil(a / 2^s) for possibly negative a.
std::int64_t ceil_shift(std::int64_t a, int s) {
  return -((-a) >> s);
}

}  // namespace

std::string DyadicInterval::str() const {
  std::ostringstream os;
  os << "2^" << scale << "[" << position << "," << position + 1 << ")";
  return os.str();
}

Interval::Interval(std::int64_t lo, std::int64_t hi, int level)
    : lo_(lo), hi_(hi), level_(level) {
  if (lo >= hi) throw DomainError("Interval: left endpoint must be below right");
  if (level < -kMaxLevel || level > kMaxLevel)
    throw DomainError("Interval: level out of supported range");
  normalize();
}

void Interval::normalize() {
  while (level_ > 0 && (lo_ % 2 == 0) && (hi_ % 2 == 0)) {
    lo_ /= 2;
    hi_ /= 2;
    --level_;
  }
  // Negative levels (coarser than integers) are folded into the numerators.
  while (level_ < 0) {
    lo_ *= 2;
    hi_ *= 2;
    ++level_;
  }
}

Interval Interval::from_dyadic(const DyadicInterval& j) {
  if (j.scale >= 0) return Interval(j.position << j.scale, (j.position + 1) << j.scale, 0);
  return Interval(j.position, j.position + 1, -j.scale);
}

std::int64_t Interval::left_ticks(int resolution_log2) const {
  if (!aligned_to(resolution_log2))
    throw DomainError("Interval: endpoints not aligned to the working grid");
  return lo_ << (resolution_log2 - level_);
}

std::int64_t Interval::right_ticks(int resolution_log2) const {
  if (!aligned_to(resolution_log2))
    throw DomainError("Interval: endpoints not aligned to the working grid");
  return hi_ << (resolution_log2 - level_);
}

bool Interval::contains(const Interval& other) const {
  const int common = std::max(level_, other.level_);
  const std::int64_t a = lo_ << (common - level_);
  const std::int64_t b = hi_ << (common - level_);
  const std::int64_t c = other.lo_ << (common - other.level_);
  const std::int64_t d = other.hi_ << (common - other.level_);
  return a <= c && d <= b;
}

bool Interval::intersects(const Interval& other) const {
  const int common = std::max(level_, other.level_);
  const std::int64_t a = lo_ << (common - level_);
  const std::int64_t b = hi_ << (common - level_);
  const std::int64_t c = other.lo_ << (common - other.level_);
  const std::int64_t d = other.hi_ << (common - other.level_);
  return a < d && c < b;
}

Interval Interval::dilated(int pow2) const {
  if (pow2 < 0) throw DomainError("Interval::dilated: negative dilation");
  if (pow2 > 40) throw DomainError("Interval::dilated: dilation exponent too large");
  // Work at level+1 so the centre is exact.
  const std::int64_t c2 = lo_ + hi_;            // centre * 2^(level+1)
  const std::int64_t h2 = (hi_ - lo_) << pow2;  // dilated half-length * 2^(level+1)
  return Interval(c2 - h2, c2 + h2, level_ + 1);
}

bool Interval::shorter_leftmost(const Interval& a, const Interval& b) {
  const int common = std::max(a.level_, b.level_);
  const std::int64_t la = (a.hi_ - a.lo_) << (common - a.level_);
  const std::int64_t lb = (b.hi_ - b.lo_) << (common - b.level_);
  if (la != lb) return la < lb;
  const std::int64_t pa = a.lo_ << (common - a.level_);
  const std::int64_t pb = b.lo_ << (common - b.level_);
  return pa < pb;
}

std::string Interval::str() const {
  std::ostringstream os;
  os << "[" << left() << "," << right() << ")";
  return os.str();
}

std::vector<DyadicInterval> dyadics_within(const Interval& I, int min_scale) {
  std::vector<DyadicInterval> out;
  const int level = I.level();
  const std::int64_t lo = I.lo_num();
  const std::int64_t hi = I.hi_num();

  // Largest scale that could fit: 2^j <= length.
  const double len = I.length();
  int j_top = static_cast<int>(std::floor(std::log2(len)));
  // Guard against floating rounding at exact powers of two.
  while (std::ldexp(1.0, j_top + 1) <= len) ++j_top;
  while (std::ldexp(1.0, j_top) > len) --j_top;

  for (int j = j_top; j >= min_scale; --j) {
    // k with k*2^j >= lo*2^-level and (k+1)*2^j <= hi*2^-level.
    std::int64_t k_first, k_last_excl;
    const int s = j + level;
    if (s >= 0) {
      k_first = ceil_shift(lo, s);
      k_last_excl = floor_shift(hi, s);
    } else {
      k_first = lo << (-s);
      k_last_excl = hi << (-s);
    }
    for (std::int64_t k = k_first; k + 1 <= k_last_excl; ++k) out.push_back({j, k});
  }
  return out;
}

}  // namespace bmolab

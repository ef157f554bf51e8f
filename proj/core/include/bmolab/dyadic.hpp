#ifndef BMOLAB_DYADIC_HPP
#define BMOLAB_DYADIC_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "bmolab/errors.hpp"

namespace bmolab {

/// Dyadic interval J = 2^j [k, k+1) identified by the exact integer pair (j, k).
struct DyadicInterval {
  int scale = 0;              ///< j; |J| = 2^j
  std::int64_t position = 0;  ///< k

  friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;

  double length() const { return std::ldexp(1.0, scale); }
  double left() const { return std::ldexp(static_cast<double>(position), scale); }
  double right() const { return std::ldexp(static_cast<double>(position + 1), scale); }
  double centre() const { return std::ldexp(static_cast<double>(2 * position + 1), scale - 1); }

  DyadicInterval parent() const { return {scale + 1, position >> 1}; }
  DyadicInterval left_child() const { return {scale - 1, position << 1}; }
  DyadicInterval right_child() const { return {scale - 1, (position << 1) + 1}; }

  /// Exact containment test: this ⊇ other.
  bool contains(const DyadicInterval& other) const {
    if (other.scale > scale) return false;
    const int shift = scale - other.scale;
    if (shift >= 63) return false;
    return (other.position >> shift) == position;  // arithmetic shift = floor div
  }

  std::string str() const;
};

/// Finite half-open interval with exact dyadic-rational endpoints:
/// [lo, hi) * 2^-level.  Always stored in normalized form (minimal level),
/// so equality of values is equality of representation.
class Interval {
 public:
  Interval() = default;
  Interval(std::int64_t lo, std::int64_t hi, int level);

  static Interval from_dyadic(const DyadicInterval& j);
  /// Interval [a, b) with integer endpoints.
  static Interval of_ints(std::int64_t a, std::int64_t b) { return Interval(a, b, 0); }

  std::int64_t lo_num() const { return lo_; }
  std::int64_t hi_num() const { return hi_; }
  int level() const { return level_; }

  double left() const { return std::ldexp(static_cast<double>(lo_), -level_); }
  double right() const { return std::ldexp(static_cast<double>(hi_), -level_); }
  double length() const { return std::ldexp(static_cast<double>(hi_ - lo_), -level_); }
  double centre() const { return std::ldexp(static_cast<double>(lo_ + hi_), -level_ - 1); }

  /// True when both endpoints lie on the grid of step 2^-resolution_log2.
  bool aligned_to(int resolution_log2) const { return level_ <= resolution_log2; }

  /// Endpoint in units of 2^-resolution_log2 ("ticks"); exact.
  std::int64_t left_ticks(int resolution_log2) const;
  std::int64_t right_ticks(int resolution_log2) const;

  bool contains(const Interval& other) const;
  bool contains(const DyadicInterval& j) const { return contains(from_dyadic(j)); }
  bool intersects(const Interval& other) const;

  /// Concentric dilation 2^pow2 I (pow2 >= 0).
  Interval dilated(int pow2) const;

  friend bool operator==(const Interval&, const Interval&) = default;
  /// Ordering used for deterministic tie-breaking: shorter first, then leftmost.
  static bool shorter_leftmost(const Interval& a, const Interval& b);

  std::string str() const;

 private:
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 1;
  int level_ = 0;

  void normalize();
};

/// Every dyadic J ⊆ I with |J| >= 2^min_scale, each exactly once,
/// ordered by (scale descending, position ascending).
std::vector<DyadicInterval> dyadics_within(const Interval& I, int min_scale);

}  // namespace bmolab

#endif

#ifndef BMOLAB_GRID_HPP
#define BMOLAB_GRID_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bmolab/dyadic.hpp"

namespace bmolab {

/// Finite-dimensional model space: R^d with the l^r norm, 1 < r < infinity.
struct VectorSpaceDescriptor {
  int dimension = 1;
  double exponent = 2.0;  ///< r

  double norm(std::span<const double> v) const;

  friend bool operator==(const VectorSpaceDescriptor&, const VectorSpaceDescriptor&) = default;
};

/// Vector-valued function sampled at cell midpoints of a uniform dyadic grid
/// over a finite half-open window.  The model is piecewise constant on cells;
/// every integral over a grid-aligned interval is an exact midpoint sum.
/// Immutable after construction.
class GridFunction {
 public:
  GridFunction(Interval domain, int resolution_log2, VectorSpaceDescriptor space,
               std::vector<double> samples);

  static GridFunction zero(const Interval& domain, int resolution_log2,
                           const VectorSpaceDescriptor& space);
  static GridFunction constant(const Interval& domain, int resolution_log2,
                               const VectorSpaceDescriptor& space,
                               std::span<const double> value);
  /// Midpoint sampling of a pointwise rule f(x, out).
  static GridFunction sample(const Interval& domain, int resolution_log2,
                             const VectorSpaceDescriptor& space,
                             const std::function<void(double, std::span<double>)>& f);
  /// Scalar convenience overload.
  static GridFunction sample_scalar(const Interval& domain, int resolution_log2,
                                    const std::function<double(double)>& f);

  const Interval& domain() const { return domain_; }
  int resolution_log2() const { return resolution_log2_; }
  double step() const { return step_; }
  const VectorSpaceDescriptor& space() const { return space_; }

  std::int64_t cell_count() const { return cells_; }
  double cell_midpoint(std::int64_t i) const;
  std::span<const double> cell(std::int64_t i) const {
    return {samples_.data() + i * space_.dimension, static_cast<std::size_t>(space_.dimension)};
  }
  double scalar_cell(std::int64_t i) const { return samples_[i]; }
  std::span<const double> data() const { return samples_; }

  bool scalar() const { return space_.dimension == 1; }

  /// Index range [first, last) of cells covered by a grid-aligned I ⊆ domain.
  std::pair<std::int64_t, std::int64_t> cell_range(const Interval& I) const;

 private:
  Interval domain_;
  int resolution_log2_;
  double step_;
  VectorSpaceDescriptor space_;
  std::int64_t cells_;
  std::vector<double> samples_;  // cell-major, d doubles per cell
};

/// <f>_I: componentwise midpoint mean over I (exact for the cell model).
std::vector<double> average(const GridFunction& f, const Interval& I);

/// Midpoint sum of ||f(x)||_X^p * g(x) * step over cells of I.
double integrate_norm(const GridFunction& f, const Interval& I, double p,
                      const GridFunction* density = nullptr);

namespace detail {

/// Deterministic parallel map over [0, n): results are produced per index and
/// reduced in index order, so thread count never changes the output.
void parallel_for_index(std::int64_t n, const std::function<void(std::int64_t)>& body);

/// Neumaier compensated accumulator; fixed evaluation order.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace detail

}  // namespace bmolab

#endif

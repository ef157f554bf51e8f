#ifndef BMOLAB_WEIGHTS_HPP
#define BMOLAB_WEIGHTS_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bmolab/grid.hpp"

namespace bmolab {

/// Positive weight sampled at cell midpoints over the window, with O(1) exact
/// interval masses w(I) from a prefix-sum table.  Immutable after construction.
class WeightModel {
 public:
  static WeightModel constant(const Interval& window, int resolution_log2, double c);
  /// |x - centre|^a.  The midpoint rule never lands on the singularity when
  /// centre is a grid point, since samples sit at cell midpoints.
  static WeightModel power(const Interval& window, int resolution_log2, double a,
                           double centre = 0.0);
  /// Two-level step: lo on {x < x0}, hi on {x >= x0}.
  static WeightModel two_level_step(const Interval& window, int resolution_log2, double x0,
                                    double lo, double hi);
  static WeightModel from_samples(GridFunction samples);

  const GridFunction& samples() const { return samples_; }
  const Interval& window() const { return samples_.domain(); }
  int resolution_log2() const { return samples_.resolution_log2(); }

  /// w(I) = integral of the samples over a grid-aligned I; exact and additive.
  double mass(const Interval& I) const;
  /// Integral of w^q over I (used by the A_q dual average); computed on demand.
  double mass_power(const Interval& I, double q) const;

  const std::string& kind() const { return kind_; }

 private:
  WeightModel(GridFunction samples, std::string kind);

  GridFunction samples_;
  std::string kind_;
  std::vector<double> prefix_;  // prefix_[i] = sum of first i samples
};

/// Certificate from a finite-family A_q scan.
struct AqCertificate {
  double q = 0.0;
  double constant = 0.0;  ///< max quotient over the family; >= 1 up to rounding
  std::size_t family_size = 0;
  Interval attaining;
};

/// The A_q quotient (<w>_I) (<w^{-1/(q-1)}>_I)^{q-1}.
double aq_quotient(const WeightModel& w, double q, const Interval& I);

AqCertificate aq_constant(const WeightModel& w, double q, std::span<const Interval> family);

/// Ratios w(2^l I) / (w(I) 2^{q l}) for l = 1..l_max; bounded for an A_q weight.
std::vector<double> dilation_growth(const WeightModel& w, const Interval& I, double q,
                                    int l_max);

/// Canonical certification family: every dyadic interval in the window with
/// |I| >= 2^min_scale, plus every union of two adjacent same-scale dyadics
/// (the straddling "sibling pairs" that a purely dyadic family would miss).
std::vector<Interval> canonical_interval_family(const Interval& window, int min_scale);

}  // namespace bmolab

#endif

#ifndef BMOLAB_NORMS_HPP
#define BMOLAB_NORMS_HPP

#include <span>
#include <string>
#include <vector>

#include "bmolab/coefficients.hpp"
#include "bmolab/growth.hpp"
#include "bmolab/randsign.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

/// Result of a sup-over-intervals norm computation.  Ties in the attaining
/// interval break toward (shorter, then leftmost).
struct NormReport {
  double value = 0.0;
  Interval attaining;
  std::size_t family_size = 0;
  std::string mode = "deterministic";  // "deterministic" | "exact" | "monte-carlo"
  std::vector<std::pair<Interval, double>> breakdown;  // per-interval values, if kept

  std::string to_json() const;
};

/// sup_I (w(I) rho(|I|))^{-1} \int_I ||f - <f>_I|| dx  over the family.
NormReport bmo_norm(const GridFunction& f, const WeightModel& w, const GrowthModel& rho,
                    std::span<const Interval> family, bool keep_breakdown = false);

/// John--Nirenberg p-variant:
/// sup_I rho(|I|)^{-1} ( w(I)^{-1} \int_I ||f - <f>_I||^p w^{1-p} dx )^{1/p}.
/// p = 1 reproduces bmo_norm exactly.
NormReport jn_p_norm(const GridFunction& f, const WeightModel& w, const GrowthModel& rho,
                     double p, std::span<const Interval> family, bool keep_breakdown = false);

struct CarlesonOptions {
  double p = 2.0;
  int min_scale = -20;  ///< truncation of the inner sum: |J| >= 2^min_scale
  MomentOptions moment;
  bool keep_breakdown = false;
};

/// Randomized Carleson norm: for each interval I the sign series has terms
/// a_J (|J|/w(J))^{1/p'} 1_J(x) / |J|^{1/2} over dyadic J ⊆ I in the support,
/// and the value is rho(|I|)^{-1} ( w(I)^{-1} \int_I E||.||^p dx )^{1/p}.
NormReport carleson_norm(const CoefficientArray& a, const WeightModel& w,
                         const GrowthModel& rho, std::span<const Interval> family,
                         const CarlesonOptions& opts);

/// Scalar p = 2 closed form: rho(|I|)^{-1} ( w(I)^{-1} sum |a_J|^2 |J|/w(J) )^{1/2}.
NormReport carleson_scalar_p2(const CoefficientArray& a, const WeightModel& w,
                              const GrowthModel& rho, std::span<const Interval> family,
                              bool keep_breakdown = false);

/// Scalar square-function form (Hincin-equivalent for every p, equal at p = 2).
NormReport carleson_scalar_squarefn(const CoefficientArray& a, const WeightModel& w,
                                    const GrowthModel& rho, double p,
                                    std::span<const Interval> family,
                                    bool keep_breakdown = false);

}  // namespace bmolab

#endif

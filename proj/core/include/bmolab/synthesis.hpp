#ifndef BMOLAB_SYNTHESIS_HPP
#define BMOLAB_SYNTHESIS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bmolab/coefficients.hpp"
#include "bmolab/growth.hpp"
#include "bmolab/norms.hpp"
#include "bmolab/wavelets.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

/// One ring of the annular decomposition around I:
/// level 1 is (f - <f>_I) 1_{2I}; level l >= 2 is (f - <f>_I) 1_{I_l \ I_{l-1}}.
struct AnnularPiece {
  int level = 1;
  GridFunction values;
};

/// Pieces l = 1..l_max; together with <f>_I they reconstruct f exactly on
/// 2^{l_max} I.  Throws TruncationError (with the largest feasible l_max)
/// when the dilation escapes the function domain.
std::vector<AnnularPiece> annular_decompose(const GridFunction& f, const Interval& I,
                                            int l_max);

struct OscillationGrowthResult {
  double lhs = 0.0;    ///< \int_{2^l I} ||f - <f>_I||
  double rhs = 0.0;    ///< sum_{k=1}^{l} 2^{l-k} w(2^k I) rho(2^k |I|)
  double ratio = 0.0;  ///< lhs / rhs
};

/// Caller normalizes f so its BMO norm is at most 1 beforehand.
OscillationGrowthResult oscillation_growth_check(const GridFunction& f, const WeightModel& w,
                                                 const GrowthModel& rho, const Interval& I,
                                                 int l);

struct HolderWeightResult {
  double lhs = 0.0;  ///< (|J| / w(J))^{1/p'}
  double rhs = 0.0;  ///< |J|^{-1} \int_J w^{-1/p'}
  bool pass = false;
};

/// True inequality (Hoelder), no slack constant: lhs <= rhs up to rounding.
HolderWeightResult holder_weight_check(const WeightModel& w, const Interval& J, double p);

/// The three dyadic collections the synthesis splits over, relative to I:
/// J1: 2|J| > |I|;  J2: 2|J| <= |I| and 2J ∩ 2I empty;  J3: the rest.
struct IntervalClassification {
  std::vector<DyadicInterval> j1, j2, j3;
  std::size_t total() const { return j1.size() + j2.size() + j3.size(); }
};

IntervalClassification classify(const Interval& I, std::span<const DyadicInterval> candidates);

/// Truncation of the formally infinite synthesis series.  The spatial filter
/// is a fixed region (independent of the classifying interval) so that two
/// syntheses with equal cutoffs share exactly the same term set.
struct SynthesisCutoffs {
  int min_scale = -20;
  int max_scale = 20;
  Interval region = Interval::of_ints(-1, 1);  ///< keep J whose psi_J support meets this

  friend bool operator==(const SynthesisCutoffs&, const SynthesisCutoffs&) = default;
};

struct SynthesisResult {
  GridFunction f1, f2, f3, f_total;  ///< on the reporting grid; f_total = f1+f2+f3
  std::vector<std::pair<DyadicInterval, double>> renormalization;  ///< c_J = psi_J(x_I), J in J1
  IntervalClassification classes;
  SynthesisCutoffs cutoffs;
};

/// f1 = sum_{J1} a_J [psi_J - psi_J(x_I)], f2/f3 = sum a_J psi_J over J2/J3,
/// evaluated on the grid of `reporting` at the given resolution.
SynthesisResult synthesize(const CoefficientArray& a, const WaveletModel& psi,
                           const Interval& I, const SynthesisCutoffs& cutoffs,
                           const Interval& reporting, int resolution_log2);

/// Max deviation of (f_{I'} - f_I) from its mean on I; the two series share
/// one cutoff set, so the cancellation is exact up to rounding.
double constancy_check(const CoefficientArray& a, const WaveletModel& psi, const Interval& I,
                       const Interval& I_prime, const SynthesisCutoffs& cutoffs,
                       int resolution_log2);

/// ||a_J|| / carleson_value <= rho(|J|) w(J) |J|^{-1/2} (1 + tol): the
/// individual-term consequence of a unit Carleson norm, taking I = J.
bool individual_bound_check(const CoefficientArray& a, const WeightModel& w,
                            const GrowthModel& rho, const DyadicInterval& J,
                            double carleson_value, double tol = 1e-9);

/// Writes the per-piece grids (f1/f2/f3/total as .gfn files) and a JSON
/// sidecar with the renormalization record, classification sizes, and
/// cutoffs under `prefix` (prefix + "-f1.gfn", ..., prefix + ".json").
void write_synthesis_result(const std::string& prefix, const SynthesisResult& result);

/// Partial sum of the J3 series in a caller-chosen order (first `prefix`
/// terms), for unconditionality probes.
GridFunction f3_partial_sum(const CoefficientArray& a, const WaveletModel& psi,
                            const Interval& I, const SynthesisCutoffs& cutoffs,
                            std::span<const DyadicInterval> order, std::size_t prefix,
                            const Interval& reporting, int resolution_log2);

}  // namespace bmolab

#endif

#ifndef BMOLAB_WAVELETS_HPP
#define BMOLAB_WAVELETS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bmolab/coefficients.hpp"
#include "bmolab/grid.hpp"

namespace bmolab {

/// Orthonormal wavelet mother, stored as exact cell values on a guard grid of
/// resolution 2^-(L+G) over its support [0, support_length).  After
/// construction the discrete model has exactly vanishing integral and unit
/// L^2 norm in its own quadrature, so identities that rest on cancellation
/// hold to machine precision downstream.
///
/// Daubechies mothers are produced by the cascade refinement iteration
/// (L+G+4 passes) from the standard minimum-phase filters; Haar is exact.
class WaveletModel {
 public:
  static WaveletModel haar(int working_resolution_log2, int guard_refinement = 6);
  /// `order` = number of vanishing moments, 3..6 (2k taps).
  static WaveletModel daubechies(int order, int working_resolution_log2,
                                 int guard_refinement = 6);
  static WaveletModel from_cells(std::vector<double> cells, int working_resolution_log2,
                                 int guard_refinement, bool normalize = true);

  const std::string& kind() const { return kind_; }
  int vanishing_moments() const { return vanishing_moments_; }
  int guard_resolution_log2() const { return guard_resolution_log2_; }
  int guard_refinement() const { return guard_refinement_; }
  int support_length() const { return support_length_; }
  /// Whether the wavelet meets the smoothness/decay hypotheses of the two
  /// norm-comparison theorems (Haar does not: it fails the derivative decay).
  bool satisfies_theorem_hypotheses() const { return theorem_ok_; }

  std::span<const double> cells() const { return cells_; }

  /// Point value of the mother (right-continuous cell model); 0 off support.
  double evaluate(double y) const;

  /// psi_J(x) at a point.
  double dilated_value(const DyadicInterval& J, double x) const;

  /// Exact average of psi_J over the x-cell [m 2^-res, (m+1) 2^-res).
  double dilated_cell_average(const DyadicInterval& J, int resolution_log2,
                              std::int64_t tick) const;

  /// Support of psi_J in tick units of 2^-res (clamped to nothing if empty).
  std::pair<std::int64_t, std::int64_t> dilated_support_ticks(const DyadicInterval& J,
                                                              int resolution_log2) const;

 private:
  WaveletModel() = default;

  std::string kind_;
  int vanishing_moments_ = 0;
  int guard_resolution_log2_ = 0;  // mother cells have width 2^-this
  int guard_refinement_ = 0;
  int support_length_ = 1;  // support = [0, support_length_)
  bool theorem_ok_ = false;
  std::vector<double> cells_;
  std::vector<double> prefix_;  // prefix sums of cells_

  void finalize(bool normalize);
};

/// psi_J sampled on the working grid over `window` (exact cell averages of
/// the mother model; zero off support).
GridFunction dilate_translate(const WaveletModel& psi, const DyadicInterval& J,
                              const Interval& window, int resolution_log2);

/// <psi_J, f> componentwise (midpoint pairing on f's grid).
std::vector<double> coefficient(const WaveletModel& psi, const DyadicInterval& J,
                                const GridFunction& f);

/// Wavelet transform restricted to a candidate set.
CoefficientArray wavelet_coefficients(const WaveletModel& psi, const GridFunction& f,
                                      std::span<const DyadicInterval> candidates);

struct PsiClassReport {
  double decay_constant = 0.0;       ///< max |phi(y)| (1+|y|)^u
  double derivative_constant = 0.0;  ///< max |forward difference| (1+|y|)^v
  bool pass = false;
};

/// Numeric scan of the Psi^u_v decay class on the guard grid.  Diagnostic:
/// forward differences stand in for the derivative.
PsiClassReport psi_class_check(const WaveletModel& phi, double u, double v,
                               double bound = 1000.0);

/// max over pairs in the family of |<psi_A, psi_B> - delta_AB|, with the
/// pairings computed exactly against the guard-cell model.
double orthonormality_residual(const WaveletModel& psi,
                               std::span<const DyadicInterval> family);

/// Coefficient rule for the kernel sum; all |a_jk| <= 1 by construction.
struct KernelCoefficients {
  enum class Rule { zeros, single, random_signs } rule = Rule::random_signs;
  int single_j = 0;
  std::int64_t single_k = 0;
  double single_value = 1.0;
  std::uint64_t seed = 1;

  double operator()(int j, std::int64_t k) const;
};

/// K(x,y) = sum_{j,k} a_jk 2^j phi(2^j x - k) psi(2^j y - k), truncated to
/// scales j in [j_min, j_max]; the k-sum is finite by compact support.
struct KernelSpec {
  const WaveletModel* phi = nullptr;
  const WaveletModel* psi = nullptr;
  int j_min = -4;
  int j_max = 4;
  KernelCoefficients coefficients;
};

double kernel_eval(const KernelSpec& ks, double x, double y);

struct KernelCheckReport {
  double worst_constant = 0.0;  ///< max |K(x,y)| |x-y|
  bool pass = false;
};

KernelCheckReport kernel_size_check(const KernelSpec& ks,
                                    std::span<const std::pair<double, double>> pairs,
                                    double bound);

}  // namespace bmolab

#endif

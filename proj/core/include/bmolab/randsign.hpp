#ifndef BMOLAB_RANDSIGN_HPP
#define BMOLAB_RANDSIGN_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bmolab/dyadic.hpp"
#include "bmolab/grid.hpp"

namespace bmolab {

struct MomentOptions {
  int exact_threshold = 20;          ///< enumerate all 2^n patterns up to here
  std::int64_t mc_samples = 100000;  ///< Monte Carlo draws above the threshold
  std::uint64_t seed = 1;
};

struct MomentEstimate {
  double value = 0.0;  ///< (E ||sum eps_J xi_J||^p)^{1/p}
  bool exact = true;
  std::int64_t samples = 0;  ///< enumerated patterns or MC draws
  std::uint64_t seed = 0;
  double std_error = 0.0;  ///< 0 in exact mode

  /// {"value":..,"mode":"exact"|"monte-carlo","samples":..,"seed":..,"std_error":..}
  std::string to_json() const;
};

/// E || sum_i eps_i xi_i ||^p over all sign patterns (exact enumeration).
/// `flat` holds n vectors of dimension space.dimension, cell-major.
double rademacher_expectation_p(std::span<const double> flat, int n,
                                const VectorSpaceDescriptor& space, double p);

/// Monte Carlo counterpart; signs are a pure function of (seed, draw index).
/// Returns the mean of ||.||^p and its standard error through `se_out`.
double rademacher_expectation_p_mc(std::span<const double> flat, int n,
                                   const VectorSpaceDescriptor& space, double p,
                                   std::int64_t samples, std::uint64_t seed, double* se_out);

/// Estimate of (E ||sum eps_i xi_i||^p)^{1/p}; exact when n <= threshold.
MomentEstimate moment_of_vectors(std::span<const double> flat, int n,
                                 const VectorSpaceDescriptor& space, double p,
                                 const MomentOptions& opts = {});

/// Random sign series: labelled vector terms, or labelled grid-function
/// summands integrated outside the sign expectation.
class SignSeries {
 public:
  static SignSeries from_vectors(const VectorSpaceDescriptor& space,
                                 const std::vector<std::vector<double>>& terms);
  static SignSeries from_functions(std::vector<std::pair<DyadicInterval, GridFunction>> terms);

  bool vector_mode() const { return functions_.empty(); }
  int term_count() const;
  const VectorSpaceDescriptor& space() const { return space_; }

  /// Vector mode: (E ||sum eps xi||^p)^{1/p}.
  /// Function mode: (int_D E ||sum eps f_J(x)||^p dx)^{1/p} over the common domain.
  MomentEstimate moment(double p, const MomentOptions& opts = {}) const;

  /// Series with terms lambda_i * xi_i (vector mode only).
  SignSeries contracted(std::span<const double> lambdas) const;

  std::span<const double> flat_vectors() const { return flat_; }

 private:
  VectorSpaceDescriptor space_{1, 2.0};
  std::vector<double> flat_;  // vector mode storage
  int n_ = 0;
  std::vector<std::pair<DyadicInterval, GridFunction>> functions_;
};

struct KhintchineResult {
  double ratio = 0.0;  ///< moment / l2 norm; exactly 1 at p = 2
  double moment = 0.0;
  double l2_norm = 0.0;
};

KhintchineResult khintchine_compare(std::span<const double> lambdas, double p,
                                    const MomentOptions& opts = {});

struct ContractionResult {
  double lhs = 0.0;  ///< moment with coefficients pulled in
  double rhs = 0.0;  ///< moment of the bare series
  bool pass = false;
  bool exact = true;
};

/// Kahane contraction: |lambda| <= 1 forces lhs <= rhs (outright in exact mode).
ContractionResult contraction_check(const SignSeries& s, std::span<const double> lambdas,
                                    double p, const MomentOptions& opts = {});

struct KahaneResult {
  double ratio = 0.0;  ///< p-moment / r-moment
  double moment_p = 0.0;
  double moment_r = 0.0;
};

KahaneResult kahane_ratio(const SignSeries& s, double p, double r,
                          const MomentOptions& opts = {});

struct SteinResult {
  double lhs = 0.0;  ///< randomized norm with <f_J>_J replacing f_J
  double rhs = 0.0;
  double ratio = 0.0;
};

/// Dyadic-averaging instance of the vector-valued Stein inequality: J_list
/// must be a nested chain of dyadic intervals inside I.
SteinResult stein_averaging_check(std::span<const GridFunction> f_list,
                                  std::span<const DyadicInterval> j_list, const Interval& I,
                                  double p, const MomentOptions& opts = {});

}  // namespace bmolab

#endif

#ifndef BMOLAB_CONFIG_HPP
#define BMOLAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bmolab/growth.hpp"
#include "bmolab/wavelets.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

/// Working window [-2^M, 2^M) at resolution 2^-L.
struct WindowSpec {
  int m_log2 = 3;
  int resolution_log2 = 10;

  Interval interval() const {
    return Interval::of_ints(-(std::int64_t{1} << m_log2), std::int64_t{1} << m_log2);
  }
};

struct WaveletSpec {
  std::string kind = "daubechies";  // "haar" | "daubechies"
  int order = 4;
  int guard = 6;

  WaveletModel build(int resolution_log2) const;
};

struct WeightSpec {
  std::string kind = "constant";  // "constant" | "power" | "step"
  double value = 1.0;             // constant value
  double a = 0.5;                 // power exponent
  double centre = 0.0;            // power centre
  double x0 = 0.0;                // step breakpoint
  double lo = 1.0, hi = 2.0;      // step levels

  WeightModel build(const Interval& window, int resolution_log2) const;
};

struct GrowthSpec {
  std::string kind = "constant";  // "constant" | "power" | "log-power"
  double c = 1.0;
  double alpha = 0.25;
  double beta = 1.0;

  GrowthModel build() const;
};

/// Interval family construction rules.
///   dyadic           every dyadic I in the window with |I| >= 2^min_scale
///   canonical        dyadic plus adjacent same-scale pair unions
///   coarse-endpoints every interval with endpoints on a 2^coarse_log2-point grid
/// `include_window` appends the window itself.
struct FamilySpec {
  std::string kind = "dyadic";
  int min_scale = -4;
  int coarse_log2 = 8;
  bool include_window = true;

  std::vector<Interval> build(const Interval& window, int resolution_log2) const;
};

struct CorpusSpec {
  int step_functions = 8;
  int wavelet_sums = 4;
  int log_profiles = 2;
  int vector_functions = 2;  ///< d-dimensional step functions
  int arrays = 12;
  int array_support = 24;    ///< coefficients per sparse array
  int dense_arrays = 4;      ///< arrays supported on every candidate scale
  int dimension = 3;
  double exponent = 2.5;      ///< l^r exponent for vector cases
  int step_scale = -4;        ///< block scale of step corpora
  int array_min_scale = -5;   ///< finest scale drawn into coefficient arrays
};

struct ExperimentConfig {
  WindowSpec window;
  WaveletSpec wavelet;
  WeightSpec weight;
  GrowthSpec growth;
  double q = 1.5;
  double p = 2.0;
  FamilySpec bmo_family{
      .kind = "coarse-endpoints", .min_scale = -4, .coarse_log2 = 8, .include_window = true};
  FamilySpec carleson_family{
      .kind = "dyadic", .min_scale = -2, .coarse_log2 = 8, .include_window = true};
  FamilySpec reporting_family{
      .kind = "dyadic", .min_scale = 0, .coarse_log2 = 8, .include_window = false};
  int min_scale = -5;        ///< inner-sum truncation of the Carleson norms
  int sub_depth = 3;         ///< BMO side of theorem B: dyadics down to |I| 2^-sub_depth
  std::uint64_t seed = 2024;
  int exact_threshold = 20;
  std::int64_t mc_samples = 100000;
  CorpusSpec corpus;
  std::string out_dir = "out";

  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
  std::string to_json() const;

  /// Theorem A needs an admissible pair: p in (1, q'], hypothesis wavelet.
  void validate_theorem_a() const;
  /// Theorem B allows p in (1, inf) but still needs the hypothesis wavelet.
  void validate_theorem_b() const;
};

}  // namespace bmolab

#endif

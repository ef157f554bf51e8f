#ifndef BMOLAB_EXPERIMENTS_HPP
#define BMOLAB_EXPERIMENTS_HPP

#include <string>
#include <utility>
#include <vector>

#include "bmolab/config.hpp"
#include "bmolab/corpus.hpp"
#include "bmolab/norms.hpp"
#include "bmolab/synthesis.hpp"

namespace bmolab {

struct CaseRow {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  std::string note;
};

struct ExperimentReport {
  std::string experiment;
  double headline = 0.0;  ///< max ratio over the corpus
  std::vector<CaseRow> cases;
  std::vector<std::pair<std::string, double>> metrics;  ///< named summary values
  std::string config_json;

  std::string to_json() const;
  std::string to_csv() const;
  /// Two-column "case-index ratio" rows, gnuplot-ready.
  std::string to_gnuplot() const;
};

/// BMO -> Carleson direction: for each corpus function, the eta-side Carleson
/// norm of its wavelet coefficients against its rho-side BMO norm.
ExperimentReport run_theorem_a(const ExperimentConfig& config);

/// Carleson -> BMO direction: synthesize f_I from unit-Carleson arrays and
/// measure the eta-side BMO norm over subintervals, with per-piece bounds.
ExperimentReport run_theorem_b(const ExperimentConfig& config);

struct PropertyCase {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  std::string detail;
};

struct PropertySuiteReport {
  bool all_pass = false;
  std::vector<PropertyCase> cases;
  std::string config_json;

  std::string to_json() const;
  std::string to_csv() const;
};

/// Bundled invariants: randomized-series toolbox, JN equivalence, kernel size
/// plateau, the oscillation-growth and Hoelder weight lemmas, eta identities,
/// and MC/exact agreement.
/// Per-case errors are captured in the report, never fatal.
PropertySuiteReport run_property_suite(const ExperimentConfig& config);

/// Writes the corpus (gridfunctions, arrays, manifest) under config.out_dir.
void write_corpus(const ExperimentConfig& config);

}  // namespace bmolab

#endif

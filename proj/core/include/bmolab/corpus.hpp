#ifndef BMOLAB_CORPUS_HPP
#define BMOLAB_CORPUS_HPP

#include <string>
#include <vector>

#include "bmolab/coefficients.hpp"
#include "bmolab/config.hpp"
#include "bmolab/grid.hpp"

namespace bmolab {

struct CorpusFunction {
  std::string name;
  GridFunction f;
};

struct CorpusArray {
  std::string name;
  CoefficientArray a;
};

/// Seeded function corpus: random dyadic step functions, finite wavelet sums,
/// log-like cumulative Haar profiles, and vector-valued steps.  The underlying
/// objects are resolution-independent: resampling at a finer grid reproduces
/// the same functions.
std::vector<CorpusFunction> build_function_corpus(const ExperimentConfig& config);

/// Seeded coefficient-array corpus: sparse random supports plus dense arrays
/// covering every candidate scale (these make cutoff refinement meaningful).
std::vector<CorpusArray> build_array_corpus(const ExperimentConfig& config);

}  // namespace bmolab

#endif

#ifndef BMOLAB_ERRORS_HPP
#define BMOLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bmolab {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (interval escapes the window,
/// misaligned endpoints, negative density, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Object cannot be represented at the working resolution.
struct ResolutionError : Error {
  using Error::Error;
};

/// A stated precondition was violated (mismatched cutoffs, |lambda| > 1, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// Weight is zero or negative where a positive mass is required.
struct DegenerateWeightError : DomainError {
  using DomainError::DomainError;
};

/// Tail of an improper integral does not converge under the declared growth.
struct DivergenceError : Error {
  using Error::Error;
};

/// Requested construction escapes the window; carries the largest level that fits.
struct TruncationError : Error {
  int feasible_level;
  TruncationError(const std::string& what, int feasible)
      : Error(what), feasible_level(feasible) {}
};

}  // namespace bmolab

#endif

// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <stdexcept>
#include <string>

namespace nspec {

// Malformed or out-of-contract input data: non-stochastic rows, negative
// probabilities, indices outside the triangle, unreadable files. CLI exit 1.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input is well formed but violates a mathematical hypothesis required by the
// requested computation: reducible or periodic block, no reversible measure,
// zero coupling block. CLI exit 2.
class HypothesisError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An iterative numerical procedure failed to converge within its iteration
// cap, or a conditional law lost all mass. CLI exit 3.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A Pochhammer denominator of a terminating hypergeometric sum vanished
// before the numerator terminated the series.
class PoleError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// An exact polynomial division that must be exact left a nonzero remainder.
// Signals an internal formula error upstream, not bad user input.
class DivisionRemainderError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// An absorbed 2-d chain does not have the required block-zero structure
// (axis states leaking into the interior or into the other axis).
class StructureError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Detailed balance fails for the given kernel.
class NotReversibleError : public HypothesisError {
public:
  NotReversibleError(long i, long j, double defect, const std::string& what)
      : HypothesisError(what), i(i), j(j), defect(defect) {}
  long i;
  long j;
  double defect;
};

// A matrix handed to the reversible eigensolver is not self-adjoint in the
// given weights.
class NotSymmetrizableError : public HypothesisError {
public:
  explicit NotSymmetrizableError(double defect, const std::string& what)
      : HypothesisError(what), defect(defect) {}
  double defect;
};

// The positivity graph of a matrix is not strongly connected where the
// computation requires irreducibility.
class NotIrreducibleError : public HypothesisError {
public:
  using HypothesisError::HypothesisError;
};

// A linear system that the underlying theory guarantees to be regular
// turned out numerically singular; the guarantee's hypothesis must have
// failed (e.g. theta is not strictly above the block spectral radius).
class SingularMatrixError : public HypothesisError {
public:
  using HypothesisError::HypothesisError;
};

// A restriction was requested on an empty state set.
class EmptyDomainError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// A conditional evolution lost every last bit of surviving mass: the chain
// cannot reach the requested horizon from the given start at all.
class DegenerateError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

}  // namespace nspec

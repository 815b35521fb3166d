#pragma once

#include <stdexcept>
#include <string>

namespace schro {

/// Raised when an iteration fails to reach its tolerance or a solver
/// encounters a state it cannot continue from. Distinct from
/// std::invalid_argument, which flags violated preconditions.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Nehari projection has a non-positive quartic denominator.
struct NotProjectableError : NumericalError {
  using NumericalError::NumericalError;
};

/// Nehari projection has a non-positive quadratic numerator (the form is
/// not coercive at this point).
struct NotCoerciveError : NumericalError {
  using NumericalError::NumericalError;
};

struct NewtonFailureError : NumericalError {
  using NumericalError::NumericalError;
};

struct SingularJacobianError : NumericalError {
  SingularJacobianError(const std::string& what, double cond)
      : NumericalError(what), condition_estimate(cond) {}
  double condition_estimate;
};

}  // namespace schro

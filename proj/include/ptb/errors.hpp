#pragma once

#include <stdexcept>
#include <string>

namespace ptb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations: bad arguments, values outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A certified-at-construction identity failed. Must never fire.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Numeric evaluation hit a pole or a vanishing divisor.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// A target trace value failed the genericity screen; caller should redraw.
class NonGenericError : public Error {
 public:
  using Error::Error;
};

// A fiber point sits at a branch point of the eigenvalue map.
class BranchPointError : public Error {
 public:
  using Error::Error;
};

// Slope with constant trace function on the component (p = 4q on the extra one).
class DegenerateSlopeError : public Error {
 public:
  using Error::Error;
};

// Reconstructed matrices failed the group relation within tolerance.
class ReconstructionError : public Error {
 public:
  using Error::Error;
};

// Root finder failed to converge.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations, double worst_residual)
      : Error(what), iterations(iterations), worst_residual(worst_residual) {}
  int iterations;
  double worst_residual;
};

}  // namespace ptb

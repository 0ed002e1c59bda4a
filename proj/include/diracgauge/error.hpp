#pragma once

#include <stdexcept>
#include <string>

namespace diracgauge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input could not be factorized or used because the chart is not admissible
/// (g00 <= 0 or spatial block not negative definite).
class NotAdmissible : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (singular matrix, branch cut, failed
/// verification). Carries the residual that triggered the failure, when known.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, double residual = 0.0)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class SingularMetric : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularJacobian : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotASquareRoot : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotPositiveDefinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BranchFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LiftVerificationFailed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoHermitizer : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The DFW connection failed its own metric-compatibility check.
class CompatibilityResidualExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotDiagonal : public Error {
 public:
  using Error::Error;
};

/// Caller supplied something the operation cannot accept (too few samples,
/// unknown representation, dimension over the cap, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnknownRepresentation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Operator dimension above the dense-solve cap.
class DimensionCap : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace diracgauge

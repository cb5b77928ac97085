#pragma once

#include <stdexcept>
#include <string>

namespace gsfpp {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or configuration violates a documented constraint.
class InvalidParam : public Error {
 public:
  using Error::Error;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A series did not meet its truncation rule within the term cap.
class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Intermediate values left the representable range of the working precision.
/// Retrying in extended precision may succeed.
class PrecisionOverflow : public NonConvergence {
 public:
  using NonConvergence::NonConvergence;
};

class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OracleInstability : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GridExhausted : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RestartCapExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace gsfpp

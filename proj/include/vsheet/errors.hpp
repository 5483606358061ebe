#pragma once

#include <stdexcept>
#include <string>

namespace vsheet {

// Base for all detected runtime conditions of the toolkit. Programming
// errors (bad sizes, invalid flags) use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// The interface left the admissible class: 1 + 2*eta <= 0 somewhere, or a
// singular-integral denominator fell below its positive floor.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Spectral truncation is inadequate: the energy outside the retained modes
// exceeds the configured fraction of the total.
class AliasError : public Error {
 public:
  AliasError(const std::string& msg, double discarded_fraction)
      : Error(msg), discarded_fraction(discarded_fraction) {}
  double discarded_fraction;
};

// Off-interface velocity evaluation requested too close to the curve.
class TooCloseError : public Error {
 public:
  using Error::Error;
};

// A bifurcation-point precondition failed (threshold not real/positive,
// admissible-set membership, or spectral collision).
class InadmissibleError : public Error {
 public:
  using Error::Error;
};

// Newton iteration did not contract within the allowed iteration budget.
class NewtonDivergenceError : public Error {
 public:
  using Error::Error;
};

// A continuation predictor produced a residual above the safeguard.
class StepTooLargeError : public Error {
 public:
  using Error::Error;
};

// A time integration produced coefficients beyond the blow-up limit.
class BlowupError : public Error {
 public:
  using Error::Error;
};

// File reading/writing failure.
class FileError : public Error {
 public:
  using Error::Error;
};

}  // namespace vsheet

#pragma once

#include <stdexcept>
#include <string>

namespace stirap {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad scenario/config input (CLI exit code 2)
struct ConfigError : Error {
  using Error::Error;
};

// numerical singularities (CLI exit code 3)
struct NumericalError : Error {
  explicit NumericalError(const std::string& msg, double when = 0.0)
      : Error(msg), t(when) {}
  double t = 0.0;
};

struct DegeneratePulseError : NumericalError {
  using NumericalError::NumericalError;
};

struct ManifoldSingularityError : NumericalError {
  using NumericalError::NumericalError;
};

struct BoundaryError : NumericalError {
  using NumericalError::NumericalError;
};

struct MissingDarkStateError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

}  // namespace stirap

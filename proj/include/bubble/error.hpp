/**
 * @file error.hpp
 * @brief Exception hierarchy shared by the library and the CLI.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace bubble {

/// Base class; everything thrown by the library derives from this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument, malformed input or configuration. Maps to CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Transform grid too small for the band (m < 2N+2).
class AliasingError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Real series whose coefficients are not Hermitian.
class SymmetryError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Errors raised while the numerics run. Maps to CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Length formula left its validity window.
class VolumeDegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Quadrature grid does not resolve the interface.
class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Curve does not close up, or is oriented clockwise.
class GeometryError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Reference quadrature did not converge.
class OracleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace bubble

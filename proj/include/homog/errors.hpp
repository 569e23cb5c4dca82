#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace homog {

/// Base class for all failures raised by this library. CLI maps subclasses
/// to exit codes: ConfigError -> 2, everything else -> 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or inconsistent user input (config files, CLI arguments, schema).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its documented domain (tolerances, seeds, array shapes).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Grid or level-structure mismatch (non-nested grids, wrong cell counts).
class StructureError : public Error {
 public:
  using Error::Error;
};

// Coefficient field violates ellipticity (non-positive cell value).
class CoercivityError : public Error {
 public:
  using Error::Error;
};

// Grid too coarse to resolve the requested covariance length.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Generic numerical failure (eigensolver breakdown, invalid quadrature, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Source term incompatible with pure Neumann conditions.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failed to reach its tolerance; carries the residual tail.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<double> residual_tail)
      : Error(what), residuals(std::move(residual_tail)) {}
  std::vector<double> residuals;
};

}  // namespace homog

#pragma once

#include <stdexcept>
#include <string>

namespace conflab {

/// Raised when an input violates a documented precondition (bad exponent,
/// point outside the domain, mismatched grids, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a computation breaks down numerically (singular Gram,
/// non-finite quadrature, corner point hit on a node set).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace conflab

#pragma once

#include <stdexcept>
#include <string>

namespace tps {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnsupportedDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateMetric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GaugeSingular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a Legendre transform hits a degenerate potential Hessian
// (ensemble inequivalence; at a first-order transition this is the expected
// symmetry-breaking signal, not a numerical bug).
struct LegendreBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NewtonFailure : std::runtime_error {
  NewtonFailure(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

struct NoSpinodal : std::domain_error {
  using std::domain_error::domain_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tps

#pragma once

#include <stdexcept>
#include <string>

namespace catenoid {

/// Input outside the region where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation has no implementation for the sign of the curvature it got
/// (e.g. the c <= 0 quadrature asked for a spherical profile).
class UnsupportedCurvature : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical procedure failed to reach its tolerance (step-size collapse,
/// quadrature budget exhausted, lost bracket).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace catenoid

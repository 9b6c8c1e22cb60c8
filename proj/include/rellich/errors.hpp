#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rellich {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the range where the quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (grids that cannot hold a support, bad specs).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A quantity was requested of a profile that is identically zero.
class DegenerateProfileError : public Error {
 public:
  using Error::Error;
};

/// An iterative or quadrature procedure failed to deliver a trustworthy number.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The integrand has not decayed at the grid ends and truncation was not
/// acknowledged by the caller.
class TruncationError : public NumericalError {
 public:
  TruncationError(double left, double right, double peak);
  double left_magnitude() const noexcept { return left_; }
  double right_magnitude() const noexcept { return right_; }
  double peak_magnitude() const noexcept { return peak_; }

 private:
  double left_;
  double right_;
  double peak_;
};

/// A conformal shift would push non-negligible mass off the grid.
class SupportLossError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An asymptotic fit exceeded the acceptance residual.
class FitRejectedError : public NumericalError {
 public:
  FitRejectedError(double residual, std::vector<double> point_residuals);
  double residual() const noexcept { return residual_; }
  const std::vector<double>& point_residuals() const noexcept { return points_; }

 private:
  double residual_;
  std::vector<double> points_;
};

}  // namespace rellich

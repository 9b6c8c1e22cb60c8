#include "rellich/errors.hpp"

#include <cstdio>
#include <utility>

namespace rellich {

namespace {

std::string truncation_message(double left, double right, double peak) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "integrand not decayed at grid ends (left %.3e, right %.3e, peak %.3e); "
                "widen the grid or acknowledge truncation",
                left, right, peak);
  return buf;
}

std::string fit_message(double residual) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "asymptotic fit rejected: relative RMS residual %.3e > 0.05",
                residual);
  return buf;
}

}  // namespace

TruncationError::TruncationError(double left, double right, double peak)
    : NumericalError(truncation_message(left, right, peak)),
      left_(left),
      right_(right),
      peak_(peak) {}

FitRejectedError::FitRejectedError(double residual, std::vector<double> point_residuals)
    : NumericalError(fit_message(residual)),
      residual_(residual),
      points_(std::move(point_residuals)) {}

}  // namespace rellich

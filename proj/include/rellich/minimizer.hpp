#pragma once

// Minimization of the reduced Rayleigh quotient over profiles u = x1 f(|x|).
// Values are upper bounds for Q_{gamma,s}: the ansatz need not contain the
// true extremal.

#include <optional>
#include <string>
#include <vector>

#include "rellich/profiles.hpp"

namespace rellich {

struct MinimizerOptions {
  int max_iterations = 100000;
  double objective_tolerance = 1e-10;  // relative decrease per iteration
  double stationarity_tolerance = 1e-8;  // relative discrete Euler-Lagrange residual
  double armijo = 1e-4;
};

struct MinimizerReport {
  DimensionConfig cfg;
  double q_estimate = 0.0;
  RadialProfile profile;
  double el_residual = 0.0;
  double discrete_residual = 0.0;
  int iterations = 0;
  std::vector<double> objective_history;
  std::string stop_reason;
};

/// f0(r) = (1 + r^2)^{-(N-2)/2}.
RadialProfile default_initial_profile(int N, const LogGrid& grid);

/// Preconditioned descent on f -> bending - gamma hardy under sobolev_s = 1.
///
/// Works with g = r^{(N-2)/2} f, in which every term is translation invariant
/// in t = ln r, using central sixth-order differences with zero values
/// outside the grid. The preconditioner is the quadratic form itself.
MinimizerReport minimize_quotient(const DimensionConfig& cfg, const LogGrid& grid,
                                  const std::optional<RadialProfile>& init = std::nullopt,
                                  const MinimizerOptions& options = {});

/// Deterministic starting profiles: the default, conformal shifts of it and
/// smooth multiplicative perturbations.
std::vector<RadialProfile> multistart_profiles(int N, const LogGrid& grid, int count);

/// Runs minimize_quotient from each start on up to `jobs` threads and returns
/// the reports in start order.
std::vector<MinimizerReport> minimize_multistart(const DimensionConfig& cfg, const LogGrid& grid,
                                                 int count, int jobs,
                                                 const MinimizerOptions& options = {});

/// The report with the smallest q_estimate (first on ties).
const MinimizerReport& best_report(const std::vector<MinimizerReport>& reports);

/// Relative residual of L(Lf) - gamma f/r^4 - lambda (q w(q) / 2w(2)) |f|^{q-2} f r^{q-2-s}
/// with lambda fitted by weighted least squares (or forced to 0), measured
/// against r^4 L(Lf) with weight r^{N-2} dt and six nodes dropped at each end.
double euler_lagrange_residual(const RadialProfile& p, const DimensionConfig& cfg,
                               bool zero_multiplier = false);

struct QuotientBound {
  DimensionConfig cfg;
  MinimizerReport ansatz;              // best start
  std::vector<double> start_values;    // q_estimate of every start
  std::optional<double> bubble_bound;  // s = 0 only
  double s_n_estimate = 0.0;           // s = 0 only
  double bound = 0.0;
  std::string channel;  // "ansatz" or "bubble"
  /// s = 0, gamma > 0, N >= 8: the bubble scan certifies Q < S_N.
  bool below_sobolev = false;
};

/// Ansatz bound from `starts` deterministic starts; for s = 0 also the
/// bubble scan over the default epsilon ladder (a = 1, delta = 1/4).
QuotientBound q_upper_bound_report(const DimensionConfig& cfg, const LogGrid& grid, int starts = 1,
                                   int jobs = 1, const MinimizerOptions& options = {});

}  // namespace rellich

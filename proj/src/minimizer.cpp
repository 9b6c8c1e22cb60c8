#include "rellich/minimizer.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <array>
#include <limits>
#include <thread>

#include "rellich/errors.hpp"
#include "rellich/parallel.hpp"
#include "rellich/test_functions.hpp"

namespace rellich {

namespace {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

// The quotient in g-variables on a finite grid:
//   numerator   w2 h sum (D2 g + 2 D1 g - c g)^2 - gamma w2 h sum g^2
//   constraint  wq h sum |g|^q
class DiscreteQuotient {
 public:
  DiscreteQuotient(const DimensionConfig& cfg, const LogGrid& grid)
      : n_(static_cast<Eigen::Index>(grid.size())),
        h_(grid.spacing()),
        q_(critical_exponent(cfg)),
        w2_(sphere_moment(cfg.N, 2.0)),
        wq_(sphere_moment(cfg.N, q_)) {
    const double c = 0.25 * (cfg.N * cfg.N - 4.0);
    const auto d1 = DifferenceStencils::central(1);
    const auto d2 = DifferenceStencils::central(2);
    for (int k = 0; k < 7; ++k) {
      row_[k] = static_cast<long double>(d2[k]) / (static_cast<long double>(h_) * h_) +
                2.0L * static_cast<long double>(d1[k]) / h_;
    }
    row_[3] -= c;
    gamma_ = cfg.gamma;
    std::vector<Eigen::Triplet<double>> entries;
    for (Eigen::Index i = 0; i < n_; ++i) {
      for (int k = -3; k <= 3; ++k) {
        const Eigen::Index j = i + k;
        if (j < 0 || j >= n_) continue;
        entries.emplace_back(i, j, static_cast<double>(row_[k + 3]));
      }
    }
    l_.resize(n_, n_);
    l_.setFromTriplets(entries.begin(), entries.end());
    SpMat identity(n_, n_);
    identity.setIdentity();
    k_ = (w2_ * h_) * (SpMat(l_.transpose() * l_) - cfg.gamma * identity);
    solver_.compute(k_);
    if (solver_.info() != Eigen::Success) throw NumericalError("quadratic form is not positive definite");
  }

  // sum of squares of L g in extended precision; g^T K g cancels too much
  double numerator(const Vec& g) const {
    long double bend = 0.0L, mass = 0.0L;
    for (Eigen::Index i = 0; i < n_; ++i) {
      long double lg = 0.0L;
      for (int k = -3; k <= 3; ++k) {
        const Eigen::Index j = i + k;
        if (j >= 0 && j < n_) lg += row_[k + 3] * g(j);
      }
      bend += lg * lg;
      mass += static_cast<long double>(g(i)) * g(i);
    }
    return static_cast<double>(static_cast<long double>(w2_) * h_ * (bend - gamma_ * mass));
  }

  double constraint(const Vec& g) const {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n_; ++i) sum += std::pow(std::abs(g(i)), q_);
    return wq_ * h_ * sum;
  }

  // (1/q) gradient of the constraint: wq h |g|^{q-2} g
  Vec constraint_half_gradient(const Vec& g) const {
    Vec out(n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      const double a = std::abs(g(i));
      out(i) = a > 0.0 ? wq_ * h_ * std::pow(a, q_ - 2.0) * g(i) : 0.0;
    }
    return out;
  }

  Vec normalized(const Vec& g) const {
    const double s = constraint(g);
    if (!(s > 0.0)) throw DegenerateProfileError("profile vanished during minimization");
    return g * std::pow(s, -1.0 / q_);
  }

  double quotient(const Vec& g) const { return numerator(g) / std::pow(constraint(g), 2.0 / q_); }

  Vec apply(const Vec& g) const { return k_ * g; }
  Vec solve(const Vec& b) const { return solver_.solve(b); }

 private:
  Eigen::Index n_;
  double h_, q_, w2_, wq_;
  double gamma_ = 0.0;
  std::array<long double, 7> row_{};
  SpMat l_, k_;
  Eigen::SimplicialLDLT<SpMat> solver_;
};

Vec to_g(const RadialProfile& p) {
  const LogGrid& grid = p.grid();
  const double a = 0.5 * (p.N() - 2);
  Vec g(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) g(static_cast<Eigen::Index>(i)) = std::exp(a * grid.t(i)) * p.f()[i];
  return g;
}

RadialProfile from_g(const Vec& g, const LogGrid& grid, int N) {
  const double a = 0.5 * (N - 2);
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-a * grid.t(i)) * g(static_cast<Eigen::Index>(i));
  return RadialProfile(GridFunction(grid, std::move(f)), N);
}

}  // namespace

RadialProfile default_initial_profile(int N, const LogGrid& grid) {
  if (N < 5) throw DomainError("dimension N must satisfy N >= 5");
  return RadialProfile(
      GridFunction::sample(grid, [N](double r) { return std::pow(1.0 + r * r, -0.5 * (N - 2)); }), N);
}

MinimizerReport minimize_quotient(const DimensionConfig& cfg, const LogGrid& grid,
                                  const std::optional<RadialProfile>& init, const MinimizerOptions& options) {
  validate_dimension(cfg);
  validate_subcritical(cfg);
  if (cfg.s >= 4.0) throw DomainError("minimization requires s < 4");
  const RadialProfile start = init ? *init : default_initial_profile(cfg.N, grid);
  if (start.N() != cfg.N || !(start.grid() == grid)) {
    throw ConfigurationError("initial profile does not match the configuration grid");
  }
  const DiscreteQuotient problem(cfg, grid);
  Vec g = problem.normalized(to_g(start));
  double value = problem.numerator(g);

  MinimizerReport report{cfg, 0.0, start, 0.0, 0.0, 0, {value}, "iteration limit"};
  double residual = 1.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const Vec kg = problem.apply(g);
    const Vec b = problem.constraint_half_gradient(g);
    residual = (kg - value * b).norm() / kg.norm();
    // gradient of the quotient at a normalized point is 2(Kg - value b)
    const Vec grad = 2.0 * (kg - value * b);
    const Vec direction = value * problem.solve(b) - g;
    const double slope = grad.dot(direction);
    if (!(slope < 0.0)) {
      report.stop_reason = "stationary";
      break;
    }
    double step = 1.0;
    bool accepted = false;
    Vec trial;
    double trial_value = 0.0;
    for (int k = 0; k < 60; ++k, step *= 0.5) {
      trial = problem.normalized(g + step * direction);
      trial_value = problem.numerator(trial);
      if (trial_value <= value + options.armijo * step * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      report.stop_reason = residual < 100.0 * options.stationarity_tolerance
                               ? "converged at working precision"
                               : "stalled: no decrease at working precision";
      break;
    }
    if (trial_value > value) throw NumericalError("objective increased during descent");
    const double decrease = (value - trial_value) / std::abs(value);
    g = trial;
    value = trial_value;
    report.objective_history.push_back(value);
    report.iterations = it;
    if (decrease < options.objective_tolerance && residual < options.stationarity_tolerance) {
      report.stop_reason = "converged";
      break;
    }
    if (decrease <= 4.0 * std::numeric_limits<double>::epsilon()) {
      report.stop_reason = residual < 100.0 * options.stationarity_tolerance
                               ? "converged at working precision"
                               : "stalled: no decrease at working precision";
      break;
    }
  }
  {
    const Vec kg = problem.apply(g);
    const Vec b = problem.constraint_half_gradient(g);
    report.discrete_residual = (kg - value * b).norm() / kg.norm();
  }
  report.q_estimate = value;
  report.profile = from_g(g, grid, cfg.N);
  report.el_residual = euler_lagrange_residual(report.profile, cfg);
  return report;
}

std::vector<RadialProfile> multistart_profiles(int N, const LogGrid& grid, int count) {
  if (count < 1) throw ConfigurationError("multi-start needs at least one start");
  std::vector<RadialProfile> starts;
  const RadialProfile base = default_initial_profile(N, grid);
  starts.push_back(base);
  for (int j = 1; static_cast<int>(starts.size()) < count; ++j) {
    // alternate conformal shifts by 16 j nodes and a smooth perturbation
    const double shift = (j % 2 == 1 ? 1.0 : -1.0) * 16.0 * ((j + 1) / 2) * grid.spacing();
    RadialProfile shifted = conformal_rescale(base, std::exp(shift)).profile;
    std::vector<double> v(shifted.f().values().begin(), shifted.f().values().end());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= 1.0 + 0.2 * std::sin(0.5 * j * grid.t(i));
    starts.emplace_back(GridFunction(grid, std::move(v)), N);
  }
  return starts;
}

std::vector<MinimizerReport> minimize_multistart(const DimensionConfig& cfg, const LogGrid& grid, int count,
                                                 int jobs, const MinimizerOptions& options) {
  const auto starts = multistart_profiles(cfg.N, grid, count);
  std::vector<std::optional<MinimizerReport>> slots(starts.size());
  parallel_for(starts.size(), jobs, [&](std::size_t i) { slots[i] = minimize_quotient(cfg, grid, starts[i], options); });
  std::vector<MinimizerReport> out;
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

const MinimizerReport& best_report(const std::vector<MinimizerReport>& reports) {
  if (reports.empty()) throw ConfigurationError("no minimizer reports to choose from");
  return *std::min_element(reports.begin(), reports.end(),
                           [](const auto& x, const auto& y) { return x.q_estimate < y.q_estimate; });
}

double euler_lagrange_residual(const RadialProfile& p, const DimensionConfig& cfg, bool zero_multiplier) {
  validate_dimension(cfg);
  if (p.N() != cfg.N) throw ConfigurationError("profile dimension does not match configuration");
  const int N = cfg.N;
  const LogGrid& grid = p.grid();
  const double q = critical_exponent(cfg);
  const double coupling = q * sphere_moment(N, q) / (2.0 * sphere_moment(N, 2.0));
  const GridFunction llf = reduced_laplacian(reduced_laplacian(p.f(), N), N);
  constexpr std::size_t kDrop = 6;
  const std::size_t n = grid.size();
  std::vector<double> a(n, 0.0), b(n, 0.0), lead(n, 0.0), w(n, 0.0);
  bool any = false;
  for (std::size_t i = kDrop; i + kDrop < n; ++i) {
    const double t = grid.t(i);
    const double r4 = std::exp(4.0 * t);
    const double f = p.f()[i];
    lead[i] = r4 * llf[i];
    a[i] = lead[i] - cfg.gamma * f;
    b[i] = coupling * std::pow(std::abs(f), q - 2.0) * f * std::exp((q + 2.0 - cfg.s) * t);
    w[i] = std::exp((N - 2.0) * t);
    any = any || f != 0.0;
  }
  if (!any) throw DegenerateProfileError("Euler-Lagrange residual of a zero profile");
  auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i] * y[i];
    return s;
  };
  const double bb = dot(b, b);
  const double lambda = zero_multiplier || bb == 0.0 ? 0.0 : dot(a, b) / bb;
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = a[i] - lambda * b[i];
  const double scale = dot(lead, lead);
  if (!(scale > 0.0)) throw DegenerateProfileError("profile has vanishing bilaplacian");
  return std::sqrt(dot(r, r) / scale);
}

QuotientBound q_upper_bound_report(const DimensionConfig& cfg, const LogGrid& grid, int starts, int jobs,
                                   const MinimizerOptions& options) {
  validate_dimension(cfg);
  validate_subcritical(cfg);
  const auto reports = minimize_multistart(cfg, grid, starts, jobs, options);
  QuotientBound out{cfg, best_report(reports), {}, std::nullopt, 0.0, 0.0, "ansatz", false};
  for (const auto& r : reports) out.start_values.push_back(r.q_estimate);
  out.bound = out.ansatz.q_estimate;
  if (cfg.s == 0.0) {
    const auto& ladder = default_epsilon_ladder();
    const UpperBoundScan scan = strict_upper_bound_scan(cfg.N, 1.0, 0.25, cfg.gamma, ladder, {}, jobs);
    out.s_n_estimate = scan.s_n_estimate;
    out.bubble_bound = scan.rows[scan.min_index].energies.quotient;
    if (*out.bubble_bound < out.bound) {
      out.bound = *out.bubble_bound;
      out.channel = "bubble";
    }
    out.below_sobolev = cfg.gamma > 0.0 && cfg.N >= 8 && scan.strictly_below;
  }
  return out;
}

}  // namespace rellich

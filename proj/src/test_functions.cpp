#include "rellich/test_functions.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "rellich/errors.hpp"
#include "rellich/gamma.hpp"
#include "rellich/parallel.hpp"

namespace rellich {

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double smoothstep_d1(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 30.0 * x * x * (1.0 - x) * (1.0 - x);
}

double smoothstep_d2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
}

void CutoffSpec::validate() const {
  if (inner.family == CutoffFamily::LogSmoothstep && !(inner.width > 0.0)) {
    throw ConfigurationError("log cutoff width must be positive");
  }
}

double CutoffSpec::inner_value(double x) const {
  if (x <= 0.0) return 0.0;
  if (inner.family == CutoffFamily::QuinticSmoothstep) return smoothstep(x);
  return smoothstep((std::log(x) + inner.width) / inner.width);
}

double CutoffSpec::outer_value(double x) const {
  if (x <= 1.0) return 1.0;
  if (outer.family == CutoffFamily::QuinticSmoothstep) return 1.0 - smoothstep(x - 1.0);
  return 1.0 - smoothstep(std::log(x) / std::numbers::ln2);
}

CutoffJet outer_cutoff_jet(double x) {
  return {1.0 - smoothstep(x - 1.0), -smoothstep_d1(x - 1.0), -smoothstep_d2(x - 1.0)};
}

RadialProfile hardy_sequence(int N, double epsilon, const CutoffSpec& cut, double max_spacing) {
  if (N < 5) throw DomainError("dimension N must satisfy N >= 5");
  if (!(epsilon > 0.0 && epsilon < 0.1)) throw DomainError("epsilon must satisfy 0 < epsilon < 0.1");
  cut.validate();
  // phi ~ x^3 near 0 for the quintic; the log family is exactly 0 below e^{-width}
  const double inner_margin =
      cut.inner.family == CutoffFamily::QuinticSmoothstep ? 8.0 : cut.inner.width + 1.0;
  const double t_min = std::min(std::log(epsilon / 4.0), std::log(epsilon) - inner_margin);
  const double t_max = std::log(8.0 / epsilon);
  const LogGrid grid = LogGrid::with_spacing(t_min, t_max, max_spacing);
  if (grid.r(0) > epsilon / 4.0 || grid.r(grid.size() - 1) < 8.0 / epsilon * (1 - 1e-12)) {
    throw ConfigurationError("grid does not cover [eps/4, 8/eps]");
  }
  const double a = 0.5 * (N - 2);
  auto f = GridFunction::sample(grid, [&](double r) {
    return cut.inner_value(r / epsilon) * cut.outer_value(epsilon * r) * std::pow(r, -a);
  });
  return RadialProfile(std::move(f), N);
}

double BubbleRadial::value(double r) const { return std::pow(1.0 + r * r, -0.5 * (N - 4)); }

double BubbleRadial::d1(double r) const {
  return -(N - 4) * r * std::pow(1.0 + r * r, -0.5 * (N - 2));
}

double BubbleRadial::d2(double r) const {
  const double w = 1.0 + r * r;
  return -(N - 4) * std::pow(w, -0.5 * (N - 2)) + (N - 4) * (N - 2) * r * r * std::pow(w, -0.5 * N);
}

double BubbleRadial::laplacian(double r) const {
  const double w = 1.0 + r * r;
  return -(N - 4) * (N * std::pow(w, -0.5 * (N - 2)) - (N - 2) * r * r * std::pow(w, -0.5 * N));
}

double BubbleRadial::bilaplacian_constant() const {
  return static_cast<double>(N) * (N + 2) * (N - 2) * (N - 4);
}

BubbleRadial bubble_radial(int N) {
  if (N < 5) throw DomainError("dimension N must satisfy N >= 5");
  return BubbleRadial{N};
}

namespace {

constexpr double kTailDecades = 40.0;  // e-folds kept beyond the last relevant scale

template <class F>
double log_quadrature(double t_lo, double t_hi, double h, F&& integrand_in_t) {
  const LogGrid grid = LogGrid::with_spacing(t_lo, t_hi, h);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = integrand_in_t(grid.t(i));
  return integrate_t(grid, v, Truncation::Acknowledge);
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Golub-Welsch on [0, pi]
GaussRule gauss_legendre_angle(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  GaussRule rule;
  for (int k = 0; k < n; ++k) {
    const double x = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.nodes.push_back(0.5 * std::numbers::pi * (x + 1.0));
    rule.weights.push_back(std::numbers::pi * v0 * v0);
  }
  return rule;
}

// Radial jet of u_eps(rho) = eps^m (eps^2 + rho^2)^{-m}, m = (N-4)/2.
struct BubbleJet {
  double u, d1, d2;
};

BubbleJet scaled_bubble(int N, double eps, double rho) {
  const double m = 0.5 * (N - 4);
  const double w = eps * eps + rho * rho;
  const double base = std::pow(eps, m) * std::pow(w, -m);
  return {base, -2.0 * m * rho * base / w,
          -2.0 * m * base / w + 4.0 * m * (m + 1.0) * rho * rho * base / (w * w)};
}

struct RadialPieces {
  double bending_excess;
  double sobolev_excess;
};

RadialPieces radial_pieces(const BubbleSpec& spec, double h) {
  const int N = spec.N;
  const double eps = spec.epsilon;
  const double p = critical_exponent(N, 0.0);
  const BubbleRadial U{N};
  const double area = sphere_area(N);
  // scaled tail beyond |x - x0| = delta, where eta = 1 no longer holds
  const double t0 = std::log(spec.delta / eps);
  const double t1 = t0 + kTailDecades / (N - 4) + 2.0;
  const double b_tail = area * log_quadrature(t0, t1, h, [&](double t) {
    const double r = std::exp(t);
    const double lap = U.laplacian(r);
    return lap * lap * std::pow(r, N);
  });
  const double d_tail = area * log_quadrature(t0, t1, h, [&](double t) {
    const double r = std::exp(t);
    return std::pow(U.value(r), p) * std::pow(r, N);
  });
  const double s0 = std::log(spec.delta);
  const double s1 = std::log(2.0 * spec.delta);
  const double b_shell = area * log_quadrature(s0, s1, h, [&](double t) {
    const double rho = std::exp(t);
    const BubbleJet u = scaled_bubble(N, eps, rho);
    const CutoffJet c = outer_cutoff_jet(rho / spec.delta);
    const double e1 = c.d1 / spec.delta;
    const double e2 = c.d2 / (spec.delta * spec.delta);
    const double lap_u = u.d2 + (N - 1) * u.d1 / rho;
    const double lap_eta = e2 + (N - 1) * e1 / rho;
    const double lap = c.value * lap_u + 2.0 * e1 * u.d1 + u.u * lap_eta;
    return lap * lap * std::pow(rho, N);
  });
  const double d_shell = area * log_quadrature(s0, s1, h, [&](double t) {
    const double rho = std::exp(t);
    const double v = outer_cutoff_jet(rho / spec.delta).value * scaled_bubble(N, eps, rho).u;
    return std::pow(v, p) * std::pow(rho, N);
  });
  return {b_shell - b_tail, d_shell - d_tail};
}

struct HardyPieces {
  double core;
  double shell;
};

HardyPieces hardy_pieces(const BubbleSpec& spec, double h, int angular_nodes) {
  const int N = spec.N;
  const double eps = spec.epsilon;
  const GaussRule rule = gauss_legendre_angle(angular_nodes);
  std::vector<double> angular_weight(rule.nodes.size()), cos_theta(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    angular_weight[k] = rule.weights[k] * std::pow(std::sin(rule.nodes[k]), N - 2);
    cos_theta[k] = std::cos(rule.nodes[k]);
  }
  const double ring = sphere_area(N - 1);
  const double a = spec.a;
  auto angular = [&](double rho) {
    double sum = 0.0;
    for (std::size_t k = 0; k < angular_weight.size(); ++k) {
      if (spec.half_space_mask && a + rho * cos_theta[k] <= 0.0) continue;
      const double x2 = a * a + 2.0 * a * rho * cos_theta[k] + rho * rho;
      sum += angular_weight[k] / (x2 * x2);
    }
    return ring * sum;
  };
  const double t_lo = std::log(eps) - kTailDecades / N - 1.0;
  const double t_mid = std::log(spec.delta);
  const double t_hi = std::log(2.0 * spec.delta);
  const double core = log_quadrature(t_lo, t_mid, h, [&](double t) {
    const double rho = std::exp(t);
    const double u = scaled_bubble(N, eps, rho).u;
    return u * u * std::pow(rho, N) * angular(rho);
  });
  const double shell = log_quadrature(t_mid, t_hi, h, [&](double t) {
    const double rho = std::exp(t);
    const double v = outer_cutoff_jet(rho / spec.delta).value * scaled_bubble(N, eps, rho).u;
    return v * v * std::pow(rho, N) * angular(rho);
  });
  return {core, shell};
}

}  // namespace

BubbleIntegrals bubble_full_space(int N, double max_spacing) {
  if (N < 5) throw DomainError("dimension N must satisfy N >= 5");
  const BubbleRadial U{N};
  const double p = critical_exponent(N, 0.0);
  const double area = sphere_area(N);
  const double t_lo = -kTailDecades / N - 1.0;
  const double t_hi = kTailDecades / (N - 4) + 2.0;
  BubbleIntegrals out;
  out.bending = area * log_quadrature(t_lo, t_hi, max_spacing, [&](double t) {
    const double r = std::exp(t);
    const double lap = U.laplacian(r);
    return lap * lap * std::pow(r, N);
  });
  out.sobolev_0 = area * log_quadrature(t_lo, t_hi, max_spacing, [&](double t) {
    const double r = std::exp(t);
    return std::pow(U.value(r), p) * std::pow(r, N);
  });
  out.ratio = out.bending / std::pow(out.sobolev_0, 2.0 / p);
  return out;
}

double sobolev_ratio_of_bubble(int N) { return bubble_full_space(N).ratio; }

double sobolev_constant_closed_form(int N) {
  if (N < 5) throw DomainError("dimension N must satisfy N >= 5");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return pi2 * (N + 2.0) * N * (N - 2.0) * (N - 4.0) *
         std::pow(gamma_ratio(0.5 * N, static_cast<double>(N)), 4.0 / N);
}

double bubble_l2_mass(int N) {
  if (N < 9) throw DomainError("int U^2 is finite only for N >= 9");
  // int_0^inf r^{N-1} (1+r^2)^{-(N-4)} dr = B(N/2, N/2 - 4) / 2
  return sphere_area(N) * 0.5 * beta_fn(0.5 * N, 0.5 * N - 4.0);
}

void BubbleSpec::validate() const {
  if (N < 5) throw DomainError("dimension N must satisfy N >= 5");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(a > 0.0)) throw DomainError("centre distance a must be positive");
  if (!(delta > 0.0 && delta < 0.5 * a)) throw DomainError("delta must satisfy 0 < delta < a/2");
}

BubbleEnergies bubble_energies(const BubbleSpec& spec, double gamma, const BubbleQuadrature& quad) {
  spec.validate();
  if (!(quad.radial_spacing > 0.0) || quad.angular_nodes < 8) {
    throw ConfigurationError("bubble quadrature needs positive spacing and >= 8 angular nodes");
  }
  const int N = spec.N;
  const double p = critical_exponent(N, 0.0);
  const double h = quad.radial_spacing;
  const BubbleIntegrals full = bubble_full_space(N);
  const RadialPieces fine = radial_pieces(spec, h);
  const RadialPieces coarse = radial_pieces(spec, 2.0 * h);
  const HardyPieces hardy_fine = hardy_pieces(spec, h, quad.angular_nodes);
  const HardyPieces hardy_coarse = hardy_pieces(spec, 2.0 * h, quad.angular_nodes / 2);

  BubbleEnergies out;
  out.bending_full = full.bending;
  out.sobolev_full = full.sobolev_0;
  out.bending_excess = fine.bending_excess;
  out.sobolev_excess = fine.sobolev_excess;
  out.hardy_core = hardy_fine.core;
  out.hardy_shell = hardy_fine.shell;
  out.bending_error = std::abs(fine.bending_excess - coarse.bending_excess);
  out.sobolev_error = std::abs(fine.sobolev_excess - coarse.sobolev_excess);
  const double hardy = hardy_fine.core + hardy_fine.shell;
  out.hardy_error = std::abs(hardy - (hardy_coarse.core + hardy_coarse.shell));

  out.energies.bending = full.bending + fine.bending_excess;
  out.energies.hardy = hardy;
  out.energies.sobolev_0 = full.sobolev_0 + fine.sobolev_excess;
  out.energies.sobolev_s = out.energies.sobolev_0;

  // I / S - 1 = (1 + x)(1 + y)^{-2/p} - 1, evaluated without cancellation
  const double x = (fine.bending_excess - gamma * hardy) / full.bending;
  const double y = fine.sobolev_excess / full.sobolev_0;
  const double rel = std::expm1(std::log1p(x) - (2.0 / p) * std::log1p(y));
  out.quotient = full.ratio * (1.0 + rel);
  out.deficit = full.ratio * rel;
  out.deficit_error = full.ratio * ((out.bending_error + std::abs(gamma) * out.hardy_error) / full.bending +
                                    (2.0 / p) * out.sobolev_error / full.sobolev_0);
  if (spec.epsilon > 0.1 * spec.delta) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "epsilon %.3g is not small against delta %.3g; cutoff effects of order %.2e",
                  spec.epsilon, spec.delta, std::pow(spec.epsilon / spec.delta, N - 4));
    out.warning = buf;
  }
  return out;
}

std::string regime_tag(AsymptoticModel model) {
  switch (model) {
    case AsymptoticModel::Eps4: return "eps4";
    case AsymptoticModel::Eps4Log: return "eps4log";
    case AsymptoticModel::EpsNMinus4: return "epsN-4";
  }
  return "unknown";
}

AsymptoticModel regime_for_dimension(int N) {
  if (N < 5) throw DomainError("dimension N must satisfy N >= 5");
  if (N >= 9) return AsymptoticModel::Eps4;
  if (N == 8) return AsymptoticModel::Eps4Log;
  return AsymptoticModel::EpsNMinus4;
}

namespace {

double model_value(AsymptoticModel model, int N, double eps) {
  switch (model) {
    case AsymptoticModel::Eps4: return std::pow(eps, 4);
    case AsymptoticModel::Eps4Log: return std::pow(eps, 4) * std::log(1.0 / eps);
    case AsymptoticModel::EpsNMinus4: return std::pow(eps, N - 4);
  }
  return 0.0;
}

double correction_value(int N, double eps) {
  if (N >= 9) return std::pow(eps, std::min(N - 4, 6));
  if (N == 8) return std::pow(eps, 4);
  return std::pow(eps, N - 2);
}

void check_ladder(std::span<const EpsilonSample> points) {
  if (points.size() < 4) throw ConfigurationError("asymptotic fit needs at least 4 points");
  std::vector<double> eps;
  for (const auto& [e, v] : points) {
    if (!(e > 0.0) || !std::isfinite(v) || v == 0.0) {
      throw ConfigurationError("asymptotic fit needs positive epsilon and nonzero finite values");
    }
    eps.push_back(e);
  }
  std::sort(eps.begin(), eps.end());
  for (std::size_t i = 1; i < eps.size(); ++i) {
    if (eps[i] < 2.0 * eps[i - 1] * (1.0 - 1e-12)) {
      throw ConfigurationError("epsilon ladder must be geometric with ratio >= 2");
    }
  }
}

double relative_rms(std::span<const double> r) {
  double sum = 0.0;
  for (double x : r) sum += x * x;
  return std::sqrt(sum / static_cast<double>(r.size()));
}

}  // namespace

AsymptoticFit fit_asymptotics(std::span<const EpsilonSample> points, int N) {
  check_ladder(points);
  const AsymptoticModel model = regime_for_dimension(N);
  // minimize sum (1 - (c m_i + d k_i)/v_i)^2
  double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
  for (const auto& [eps, v] : points) {
    const double m = model_value(model, N, eps) / v;
    const double k = correction_value(N, eps) / v;
    s11 += m * m;
    s12 += m * k;
    s22 += k * k;
    b1 += m;
    b2 += k;
  }
  const double det = s11 * s22 - s12 * s12;
  if (!(std::abs(det) > 1e-300)) throw NumericalError("asymptotic fit is singular");
  AsymptoticFit fit;
  fit.model = model;
  fit.regime = regime_tag(model);
  fit.coefficient = (b1 * s22 - b2 * s12) / det;
  fit.correction = (s11 * b2 - s12 * b1) / det;
  for (const auto& [eps, v] : points) {
    const double predicted = fit.coefficient * model_value(model, N, eps) + fit.correction * correction_value(N, eps);
    fit.point_residuals.push_back((predicted - v) / v);
  }
  fit.residual = relative_rms(fit.point_residuals);
  if (fit.residual > 0.05) throw FitRejectedError(fit.residual, fit.point_residuals);
  return fit;
}

RegimeClassification classify_regime(std::span<const EpsilonSample> points, int N) {
  check_ladder(points);
  if (N < 5) throw DomainError("dimension N must satisfy N >= 5");
  RegimeClassification out;
  const std::array<AsymptoticModel, 3> models = {AsymptoticModel::Eps4, AsymptoticModel::Eps4Log,
                                                 AsymptoticModel::EpsNMinus4};
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < models.size(); ++j) {
    double num = 0, den = 0;
    for (const auto& [eps, v] : points) {
      const double m = model_value(models[j], N, eps) / v;
      num += m;
      den += m * m;
    }
    const double c = num / den;
    std::vector<double> r;
    for (const auto& [eps, v] : points) r.push_back(c * model_value(models[j], N, eps) / v - 1.0);
    out.residuals[j] = relative_rms(r);
    if (out.residuals[j] < best) {
      best = out.residuals[j];
      out.model = models[j];
    }
  }
  out.regime = regime_tag(out.model);
  return out;
}

UpperBoundScan strict_upper_bound_scan(int N, double a, double delta, double gamma,
                                       std::span<const double> ladder, const BubbleQuadrature& quad, int jobs) {
  if (ladder.empty()) throw ConfigurationError("epsilon ladder is empty");
  validate_subcritical({N, 0.0, gamma});
  UpperBoundScan scan;
  scan.N = N;
  scan.gamma = gamma;
  scan.s_n_estimate = sobolev_ratio_of_bubble(N);
  scan.s_n_closed_form = sobolev_constant_closed_form(N);
  scan.rows.resize(ladder.size());
  parallel_for(ladder.size(), jobs, [&](std::size_t i) {
    const BubbleSpec spec{N, ladder[i], a, delta, true};
    scan.rows[i] = {ladder[i], bubble_energies(spec, gamma, quad)};
  });
  scan.above_from_below_tolerance = true;
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    const auto& e = scan.rows[i].energies;
    if (e.quotient < scan.rows[scan.min_index].energies.quotient) scan.min_index = i;
    if (e.quotient < scan.s_n_estimate * (1.0 - 1e-3)) scan.above_from_below_tolerance = false;
  }
  const auto& best = scan.rows[scan.min_index].energies;
  scan.strictly_below = best.deficit + 3.0 * best.deficit_error < 0.0;
  return scan;
}

}  // namespace rellich

namespace rellich {

HardySequenceStudy hardy_sequence_study(int N, std::span<const double> ladder, const CutoffSpec& cut,
                                        double max_spacing) {
  if (ladder.size() < 2) throw ConfigurationError("Hardy sequence study needs at least two epsilon values");
  HardySequenceStudy study;
  study.N = N;
  const DimensionConfig cfg{N, 0.0, 0.0};
  for (double eps : ladder) {
    const EnergyBreakdown e = energies(hardy_sequence(N, eps, cut, max_spacing), cfg);
    study.rows.push_back({eps, e.bending, e.hardy, hardy_ratio(e)});
  }
  // least squares of value = intercept + slope ln(1/eps)
  auto slope_of = [&](auto member) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(study.rows.size());
    for (const auto& row : study.rows) {
      const double x = std::log(1.0 / row.epsilon);
      const double y = row.*member;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    if (!(std::abs(den) > 0.0)) throw ConfigurationError("epsilon ladder values must differ");
    return (n * sxy - sx * sy) / den;
  };
  study.bending_slope = slope_of(&HardySequenceRow::bending);
  study.hardy_slope = slope_of(&HardySequenceRow::hardy);
  const double w2 = sphere_moment(N, 2.0);
  study.target_ratio = hardy_half_space(N);
  study.expected_bending_slope = 2.0 * w2 * study.target_ratio;
  study.expected_hardy_slope = 2.0 * w2;
  study.slope_ratio = study.bending_slope / study.hardy_slope;
  // ratios ordered by decreasing epsilon must approach the target monotonically
  std::vector<HardySequenceRow> sorted = study.rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.epsilon > y.epsilon; });
  study.monotone = true;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double before = std::abs(sorted[i - 1].ratio - study.target_ratio);
    const double after = std::abs(sorted[i].ratio - study.target_ratio);
    if (!(after < before)) study.monotone = false;
  }
  return study;
}

}  // namespace rellich

#include "rellich/mountain_pass.hpp"

#include <cmath>
#include <limits>

#include "rellich/errors.hpp"

namespace rellich {

double energy(const EnergyBreakdown& e, const DimensionConfig& cfg) {
  const double qs = critical_exponent(cfg);
  const double q0 = critical_exponent(cfg.N, 0.0);
  return 0.5 * e.quadratic_form(cfg.gamma) - e.sobolev_s / qs - e.sobolev_0 / q0;
}

double energy(const RadialProfile& p, const DimensionConfig& cfg, Truncation policy) {
  return energy(energies(p, cfg, policy), cfg);
}

double ray_energy(const RayAnalysis& ray, const DimensionConfig& cfg, double t) {
  const double q = critical_exponent(cfg);
  const double p = critical_exponent(cfg.N, 0.0);
  return 0.5 * ray.R1 * t * t - ray.R2 * std::pow(t, q) / q - ray.R3 * std::pow(t, p) / p;
}

double ray_two_term(const RayAnalysis& ray, const DimensionConfig& cfg, double t) {
  const double p = critical_exponent(cfg.N, 0.0);
  return 0.5 * ray.R1 * t * t - ray.R3 * std::pow(t, p) / p;
}

RayAnalysis ray_analysis(double R1, double R2, double R3, const DimensionConfig& cfg) {
  validate_dimension(cfg);
  if (!(R1 > 0.0)) throw DomainError("ray analysis requires R1 > 0 (coercive direction)");
  if (R2 < 0.0 || R3 < 0.0) throw DomainError("ray masses R2, R3 must be nonnegative");
  if (R2 == 0.0 && R3 == 0.0) throw DomainError("ray has no maximum: R2 = R3 = 0");
  const int N = cfg.N;
  const double q = critical_exponent(cfg);
  const double p = critical_exponent(N, 0.0);
  RayAnalysis ray{R1, R2, R3};
  if (R3 > 0.0) {
    ray.t_max = std::pow(R1 / R3, 1.0 / (p - 2.0));
    ray.sup_f1 = (2.0 / N) * std::pow(R1 / std::pow(R3, 2.0 / p), 0.25 * N);
  } else {
    ray.t_max = std::numeric_limits<double>::infinity();
    ray.sup_f1 = std::numeric_limits<double>::infinity();
  }
  // E'(t)/t = R1 - R2 t^{q-2} - R3 t^{p-2}, strictly decreasing on (0, inf)
  auto phi = [&](double t) { return R1 - R2 * std::pow(t, q - 2.0) - R3 * std::pow(t, p - 2.0); };
  auto dphi = [&](double t) {
    return -R2 * (q - 2.0) * std::pow(t, q - 3.0) - R3 * (p - 2.0) * std::pow(t, p - 3.0);
  };
  if (q == 2.0 && R3 == 0.0) throw DomainError("ray has no maximum: R3 = 0 and 2*_s = 2");
  if (q == 2.0 && R2 >= R1) throw DomainError("ray has no interior maximum: R2 >= R1 at s = 4");
  double hi = 0.0;
  if (R3 > 0.0) hi = ray.t_max;
  if (R2 > 0.0 && q > 2.0) hi = std::max(hi, std::pow(R1 / R2, 1.0 / (q - 2.0)));
  hi *= 2.0;
  double lo = 0.0;
  while (phi(hi) > 0.0) hi *= 2.0;
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double v = phi(t);
    if (v > 0.0) lo = t; else hi = t;
    if (v == 0.0 || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    const double d = dphi(t);
    double next = t - v / d;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    t = next;
  }
  ray.t_star = t;
  ray.e_sup = ray_energy(ray, cfg, t);
  ray.strict_gap = ray.sup_f1 - ray.e_sup;
  return ray;
}

RayAnalysis ray_scan(const RadialProfile& p, const DimensionConfig& cfg) {
  const EnergyBreakdown e = energies(p, cfg);
  return ray_analysis(e.quadratic_form(cfg.gamma), e.sobolev_s, e.sobolev_0, cfg);
}

std::vector<std::pair<double, double>> ray_trace(const RayAnalysis& ray, const DimensionConfig& cfg,
                                                 double t_end, int count) {
  if (!(t_end > 0.0) || count < 2) throw ConfigurationError("ray trace needs t_end > 0 and count >= 2");
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < count; ++i) {
    const double t = t_end * i / (count - 1);
    out.emplace_back(t, ray_energy(ray, cfg, t));
  }
  return out;
}

std::pair<double, double> ps_level_bounds(double beta, const DimensionConfig& cfg) {
  validate_dimension(cfg);
  if (!(beta > 0.0)) throw DomainError("level beta must be positive");
  const double hs = cfg.s < 4.0 ? 2.0 * beta * (cfg.N - cfg.s) / (4.0 - cfg.s)
                                : std::numeric_limits<double>::infinity();
  return {hs, 0.5 * cfg.N * beta};
}

LevelWindow level_window_check(double beta, double q0, double qs, const DimensionConfig& cfg) {
  LevelWindow w;
  w.beta_star = beta_star(cfg.N, cfg.s, q0, qs);
  w.margin = w.beta_star - beta;
  w.admissible = beta > 0.0 && beta < w.beta_star;
  return w;
}

MountainPassFloor mountain_pass_floor(double c0, double c1, double c2, const DimensionConfig& cfg) {
  validate_dimension(cfg);
  if (!(c0 > 0.0) || c1 < 0.0 || c2 < 0.0 || (c1 == 0.0 && c2 == 0.0)) {
    throw DomainError("floor needs c0 > 0, c1, c2 >= 0, not both zero");
  }
  const double q = critical_exponent(cfg);
  const double p = critical_exponent(cfg.N, 0.0);
  if (q <= 2.0) throw DomainError("floor requires 2*_s > 2 (s < 4)");
  auto excess = [&](double r) { return c1 * std::pow(r, q - 2.0) + c2 * std::pow(r, p - 2.0) - 0.5 * c0; };
  double lo = 0.0, hi = 1.0;
  while (excess(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  const double r0 = 0.5 * (lo + hi);
  return {r0, c0 * r0 * r0 / 8.0};
}

}  // namespace rellich

#pragma once

// Energy E(u) = 1/2 (bending - gamma hardy) - sobolev_s / 2*_s - sobolev_0 / 2*_0
// along rays t u0, and the level bounds built from it.

#include <utility>
#include <vector>

#include "rellich/profiles.hpp"

namespace rellich {

double energy(const EnergyBreakdown& e, const DimensionConfig& cfg);
double energy(const RadialProfile& p, const DimensionConfig& cfg, Truncation policy = Truncation::Reject);

/// E(t u0) = R1 t^2 / 2 - R2 t^q / q - R3 t^p / p with q = 2*_s, p = 2*_0.
struct RayAnalysis {
  double R1 = 0.0;
  double R2 = 0.0;
  double R3 = 0.0;
  double t_max = 0.0;   // maximizer of the two-term ray f1 = R1 t^2/2 - R3 t^p/p
  double sup_f1 = 0.0;  // (2/N) (R1 / R3^{2/p})^{N/4}
  double t_star = 0.0;  // maximizer of the full ray
  double e_sup = 0.0;   // E(t_star u0)
  double strict_gap = 0.0;  // sup_f1 - e_sup
};

RayAnalysis ray_analysis(double R1, double R2, double R3, const DimensionConfig& cfg);
RayAnalysis ray_scan(const RadialProfile& p, const DimensionConfig& cfg);

/// E(t u0) on a ray.
double ray_energy(const RayAnalysis& ray, const DimensionConfig& cfg, double t);
/// f1(t) = R1 t^2/2 - R3 t^p/p.
double ray_two_term(const RayAnalysis& ray, const DimensionConfig& cfg, double t);

/// (t, E(t u0)) on count equally spaced points of [0, t_end].
std::vector<std::pair<double, double>> ray_trace(const RayAnalysis& ray, const DimensionConfig& cfg,
                                                 double t_end, int count);

/// Asymptotic mass caps (2 beta (N-s)/(4-s), N beta / 2); the first is
/// infinite at s = 4.
std::pair<double, double> ps_level_bounds(double beta, const DimensionConfig& cfg);

struct LevelWindow {
  bool admissible = false;  // 0 < beta < beta_star
  double beta_star = 0.0;
  double margin = 0.0;      // beta_star - beta
};

LevelWindow level_window_check(double beta, double q0, double qs, const DimensionConfig& cfg);

/// Geometry of the lower bound E(u) >= c0 |u|^2 - c1 |u|^{2*_s} - c2 |u|^{2*_0}:
/// r0 solves c0 - c1 r^{2*_s-2} - c2 r^{2*_0-2} = c0/2 and lambda = c0 r0^2 / 8.
struct MountainPassFloor {
  double r0 = 0.0;
  double lambda = 0.0;
};

MountainPassFloor mountain_pass_floor(double c0, double c1, double c2, const DimensionConfig& cfg);

}  // namespace rellich

#include "rellich/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rellich/errors.hpp"

namespace rellich {

namespace {

constexpr double kSupportTolerance = 1e-24;

bool all_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

std::vector<double> sobolev_density(const RadialProfile& p, double q, double s) {
  const LogGrid& grid = p.grid();
  const double power = q + p.N() - s;
  std::vector<double> d(grid.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = std::pow(std::abs(p.f()[i]), q) * std::exp(power * grid.t(i));
  }
  return d;
}

}  // namespace

RadialProfile::RadialProfile(GridFunction f, int N) : f_(std::move(f)), N_(N) {
  if (N < 5) throw DomainError("dimension N must satisfy N >= 5");
}

EnergyBreakdown energies(const RadialProfile& p, const DimensionConfig& cfg, Truncation policy) {
  validate_dimension(cfg);
  if (cfg.N != p.N()) throw ConfigurationError("profile dimension does not match configuration");
  const int N = p.N();
  const double w2 = sphere_moment(N, 2.0);
  const double qs = critical_exponent(N, cfg.s);
  const double q0 = critical_exponent(N, 0.0);
  const LogGrid& grid = p.grid();

  const GridFunction lf = reduced_laplacian(p.f(), N);
  std::vector<double> lf2(grid.size()), f2(grid.size()), fs(grid.size()), f0(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = std::abs(p.f()[i]);
    lf2[i] = lf[i] * lf[i];
    f2[i] = v * v;
    fs[i] = std::pow(v, qs);
    f0[i] = std::pow(v, q0);
  }
  EnergyBreakdown e;
  e.bending = w2 * integrate_weighted(GridFunction(grid, std::move(lf2)), N + 1.0, policy);
  e.hardy = w2 * integrate_weighted(GridFunction(grid, std::move(f2)), N - 3.0, policy);
  e.sobolev_s = sphere_moment(N, qs) *
                integrate_weighted(GridFunction(grid, std::move(fs)), qs + N - 1.0 - cfg.s, policy);
  e.sobolev_0 = sphere_moment(N, q0) *
                integrate_weighted(GridFunction(grid, std::move(f0)), q0 + N - 1.0, policy);
  return e;
}

double rayleigh_quotient(const EnergyBreakdown& e, const DimensionConfig& cfg) {
  if (!(e.sobolev_s > 0.0)) throw DegenerateProfileError("Rayleigh quotient of a zero profile");
  const double q = critical_exponent(cfg);
  return e.quadratic_form(cfg.gamma) / std::pow(e.sobolev_s, 2.0 / q);
}

double rayleigh_quotient(const RadialProfile& p, const DimensionConfig& cfg, Truncation policy) {
  return rayleigh_quotient(energies(p, cfg, policy), cfg);
}

double hardy_ratio(const EnergyBreakdown& e) {
  if (!(e.hardy > 0.0)) throw DegenerateProfileError("Hardy ratio of a zero profile");
  return e.bending / e.hardy;
}

RescaledProfile conformal_rescale(const RadialProfile& p, double r_scale) {
  if (!(r_scale > 0.0) || !std::isfinite(r_scale)) throw DomainError("scale must be positive and finite");
  const LogGrid& grid = p.grid();
  const double h = grid.spacing();
  const long shift = std::lround(std::log(r_scale) / h);
  const long n = static_cast<long>(grid.size());
  if (std::labs(shift) >= n) throw SupportLossError("conformal shift exceeds the grid");
  const double scale = std::exp(static_cast<double>(shift) * h);
  const double amplitude = std::exp(0.5 * (p.N() - 2) * static_cast<double>(shift) * h);

  const auto old = p.f().values();
  std::vector<double> density(old.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < old.size(); ++i) {
    density[i] = old[i] * old[i] * std::exp((p.N() - 2.0) * grid.t(i));
    peak = std::max(peak, density[i]);
  }
  if (peak == 0.0) throw DegenerateProfileError("cannot rescale a zero profile");

  // f_new(t_i) = amplitude * f(t_i + shift h); nodes that leave the grid must carry no mass.
  std::vector<double> values(old.size(), 0.0);
  double lost = 0.0;
  for (long j = 0; j < n; ++j) {
    const long i = j - shift;
    if (i >= 0 && i < n) {
      values[static_cast<std::size_t>(i)] = amplitude * old[static_cast<std::size_t>(j)];
    } else {
      lost = std::max(lost, density[static_cast<std::size_t>(j)]);
    }
  }
  // the end that gets zero padding must already be negligible there
  const std::size_t padded_edge = shift > 0 ? old.size() - 1 : 0;
  if (shift != 0) lost = std::max(lost, density[padded_edge]);
  if (lost > kSupportTolerance * peak) {
    throw SupportLossError("conformal shift by " + std::to_string(shift) +
                           " nodes drops Hardy mass off the grid");
  }
  return {RadialProfile(GridFunction(grid, std::move(values)), p.N()), scale, shift};
}

double half_mass_radius(const RadialProfile& p, const DimensionConfig& cfg) {
  validate_dimension(cfg);
  const double q = critical_exponent(cfg);
  const auto density = sobolev_density(p, q, cfg.s);
  if (all_zero(density)) throw DegenerateProfileError("half-mass radius of a zero profile");
  const LogGrid& grid = p.grid();
  const auto cumulative = cumulative_integral(grid, density);
  const double half = 0.5 * cumulative.back();
  const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), half);
  const auto k = static_cast<std::size_t>(std::distance(cumulative.begin(), it));
  if (k == 0) return grid.r(0);
  const double c0 = cumulative[k - 1];
  const double c1 = cumulative[k];
  const double frac = c1 > c0 ? (half - c0) / (c1 - c0) : 0.0;
  return std::exp(grid.t(k - 1) + frac * grid.spacing());
}

}  // namespace rellich

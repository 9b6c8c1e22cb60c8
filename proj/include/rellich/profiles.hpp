#pragma once

// Energies of u = x1 f(|x|) on the half-space, expressed through the radial
// factor f, plus the conformal scaling action and half-mass normalization.

#include "rellich/constants.hpp"
#include "rellich/radial_calculus.hpp"

namespace rellich {

/// The radial factor f of u = x1 f(|x|) in dimension N.
class RadialProfile {
 public:
  RadialProfile(GridFunction f, int N);

  const GridFunction& f() const noexcept { return f_; }
  const LogGrid& grid() const noexcept { return f_.grid(); }
  int N() const noexcept { return N_; }

 private:
  GridFunction f_;
  int N_;
};

struct EnergyBreakdown {
  double bending = 0.0;    // int |Delta u|^2
  double hardy = 0.0;      // int u^2 / |x|^4
  double sobolev_s = 0.0;  // int |u|^{2*_s} / |x|^s
  double sobolev_0 = 0.0;  // int |u|^{2*_0}

  double quadratic_form(double gamma) const { return bending - gamma * hardy; }
};

/// bending = w(2) int (Lf)^2 r^{N+1}, hardy = w(2) int f^2 r^{N-3},
/// sobolev_s = w(q) int |f|^q r^{q+N-1-s} with q = 2*_s.
EnergyBreakdown energies(const RadialProfile& p, const DimensionConfig& cfg,
                         Truncation policy = Truncation::Reject);

/// (bending - gamma hardy) / sobolev_s^{2/2*_s}.
double rayleigh_quotient(const EnergyBreakdown& e, const DimensionConfig& cfg);
double rayleigh_quotient(const RadialProfile& p, const DimensionConfig& cfg,
                         Truncation policy = Truncation::Reject);

/// bending / hardy.
double hardy_ratio(const EnergyBreakdown& e);

struct RescaledProfile {
  RadialProfile profile;
  double scale_used;   // exp(shift * h), the commensurate scale actually applied
  long shift;          // node shift
};

/// f -> rho^{(N-2)/2} f(rho r) with rho rounded to exp(k h).
/// Throws SupportLossError when Hardy mass would leave the grid.
RescaledProfile conformal_rescale(const RadialProfile& p, double r_scale);

/// Radius splitting int |f|^{2*_s} r^{2*_s+N-1-s} dr in half.
double half_mass_radius(const RadialProfile& p, const DimensionConfig& cfg);

}  // namespace rellich

#pragma once

// Closed-form layer: critical exponents, Hardy-Rellich constants, indicial
// roots of x1 |x|^-alpha, sphere moments and the mountain-pass threshold.

#include <array>
#include <cstdint>
#include <span>

namespace rellich {

/// Problem parameters (N, s, gamma).
struct DimensionConfig {
  int N = 8;
  double s = 0.0;
  double gamma = 0.0;
};

/// Throws DomainError unless N >= 5 and 0 <= s <= 4.
void validate_dimension(const DimensionConfig& cfg);

/// Throws DomainError unless gamma < (N^2-4)^2/16 (coercive range).
void validate_subcritical(const DimensionConfig& cfg);

/// 2(N - s)/(N - 4).
double critical_exponent(const DimensionConfig& cfg);
double critical_exponent(int N, double s);

/// N^2 (N-4)^2 / 16, the Rellich constant with the singularity inside.
double hardy_interior(int N);
/// (N^2-4)^2 / 16, the Rellich constant of the half-space.
double hardy_half_space(int N);

struct HardyConstants {
  double interior = 0.0;
  double half_space = 0.0;
  int cone_min_index = 0;  // k attaining min |N(N-4)/4 + k(N-2+k)|^2 over k >= 1
};

HardyConstants hardy_constants(int N);

/// Eigenvalues k(N-2+k), k >= first_index, of the Laplace-Beltrami operator
/// on S^{N-1} restricted to the harmonics admitted by the cone.
struct SphericalHarmonicSpectrum {
  int first_index = 1;
  double eigenvalue(int N, int k) const;
};

/// dist(-N(N-4)/4, spectrum)^2 over an explicit nondecreasing spectrum.
double cone_hardy_constant(int N, std::span<const double> spectrum);
/// Same over the generated spectrum; the scan stops once the terms recede.
double cone_hardy_constant(int N, const SphericalHarmonicSpectrum& spectrum);

/// The four exponents alpha for which x1 |x|^-alpha solves the homogeneous
/// fourth-order equation, with the residual of the quartic at each root.
struct IndicialRoots {
  double alpha_minus = 0.0;
  double alpha_plus = 0.0;
  double beta_minus = 0.0;
  double beta_plus = 0.0;
  /// |quartic(root)| for alpha-, alpha+, beta-, beta+ in that order.
  std::array<double, 4> residuals{};
  /// Largest coefficient magnitude of the quartic; residuals are judged against it.
  double coefficient_scale = 1.0;

  std::array<double, 4> as_array() const { return {beta_minus, alpha_minus, alpha_plus, beta_plus}; }
};

/// Requires -N^2 <= gamma < (N^2-4)^2/16 (the upper end is open).
IndicialRoots indicial_roots(const DimensionConfig& cfg);

/// P(alpha) = alpha (N-alpha)(alpha+2)(N-alpha-2).  Delta^2 (x1 |x|^-a) = P(a) x1 |x|^{-a-4}.
double indicial_polynomial(int N, double alpha);

/// alpha^4 - 2(N-2) alpha^3 + (N^2-6N+4) alpha^2 + (2N^2-4N) alpha - gamma.
double indicial_quartic(int N, double gamma, double alpha);

/// Monic coefficients {1, b, c, d, e} of indicial_quartic.
std::array<double, 5> indicial_quartic_coefficients(int N, double gamma);

/// Integral of sigma_1^q over the open half-sphere S^{N-1}_+.
double sphere_moment(int N, double q);

/// |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int N);

/// Monte-Carlo estimate of sphere_moment from uniformly sampled points of S^{N-1}.
double sphere_moment_monte_carlo(int N, double q, std::uint64_t samples, std::uint64_t seed);

/// min{ (2/N) Q0^{N/4}, ((4-s)/(2(N-s))) Qs^{(N-s)/(4-s)} }.
double beta_star(int N, double s, double q0, double qs);

}  // namespace rellich

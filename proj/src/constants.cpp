#include "rellich/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "rellich/errors.hpp"
#include "rellich/gamma.hpp"

namespace rellich {

namespace {

void require_dimension(int N) {
  if (N < 5) throw DomainError("dimension N must satisfy N >= 5 (got " + std::to_string(N) + ")");
}

}  // namespace

void validate_dimension(const DimensionConfig& cfg) {
  require_dimension(cfg.N);
  if (!(cfg.s >= 0.0)) throw DomainError("weight exponent s must satisfy s >= 0");
  if (!(cfg.s <= 4.0)) throw DomainError("weight exponent s must satisfy s <= 4");
  if (!std::isfinite(cfg.gamma)) throw DomainError("gamma must be finite");
}

void validate_subcritical(const DimensionConfig& cfg) {
  validate_dimension(cfg);
  const double limit = hardy_half_space(cfg.N);
  if (!(cfg.gamma < limit)) {
    throw DomainError("gamma must satisfy gamma < (N^2-4)^2/16 = " + std::to_string(limit));
  }
}

double critical_exponent(int N, double s) {
  validate_dimension({N, s, 0.0});
  return 2.0 * (N - s) / (N - 4);
}

double critical_exponent(const DimensionConfig& cfg) { return critical_exponent(cfg.N, cfg.s); }

double hardy_interior(int N) {
  require_dimension(N);
  const long long m = static_cast<long long>(N) * (N - 4);
  return static_cast<double>(m * m) / 16.0;
}

double hardy_half_space(int N) {
  require_dimension(N);
  const long long m = static_cast<long long>(N) * N - 4;
  return static_cast<double>(m * m) / 16.0;
}

double SphericalHarmonicSpectrum::eigenvalue(int N, int k) const {
  return static_cast<double>(k) * (N - 2 + k);
}

double cone_hardy_constant(int N, std::span<const double> spectrum) {
  require_dimension(N);
  if (spectrum.empty()) throw DomainError("cone spectrum must be nonempty");
  const double shift = N * (N - 4) / 4.0;
  double best = std::numeric_limits<double>::infinity();
  for (double lambda : spectrum) best = std::min(best, (shift + lambda) * (shift + lambda));
  return best;
}

double cone_hardy_constant(int N, const SphericalHarmonicSpectrum& spectrum) {
  require_dimension(N);
  if (spectrum.first_index < 0) throw DomainError("harmonic index must be nonnegative");
  // Work in 16 * term = (N(N-4) + 4 lambda)^2 / 16 with integers so the result is exact.
  const long long shift4 = static_cast<long long>(N) * (N - 4);
  long long best = -1;
  long long previous = -1;
  for (int k = spectrum.first_index;; ++k) {
    const long long lambda4 = 4LL * k * (N - 2 + k);
    const long long d = shift4 + lambda4;
    const long long term = d * d;
    if (best < 0 || term < best) best = term;
    // lambda is increasing and -N(N-4)/4 <= 0 <= lambda: once a term grows, all later do.
    if (previous >= 0 && term > previous) break;
    previous = term;
  }
  return static_cast<double>(best) / 16.0;
}

HardyConstants hardy_constants(int N) {
  HardyConstants out;
  out.interior = hardy_interior(N);
  out.half_space = hardy_half_space(N);
  const long long shift4 = static_cast<long long>(N) * (N - 4);
  long long best = -1;
  for (int k = 1; k <= 100; ++k) {
    const long long d = shift4 + 4LL * k * (N - 2 + k);
    if (best < 0 || d * d < best) {
      best = d * d;
      out.cone_min_index = k;
    }
  }
  return out;
}

std::array<double, 5> indicial_quartic_coefficients(int N, double gamma) {
  const double n = N;
  return {1.0, -2.0 * (n - 2.0), n * n - 6.0 * n + 4.0, 2.0 * n * n - 4.0 * n, -gamma};
}

double indicial_quartic(int N, double gamma, double alpha) {
  const auto c = indicial_quartic_coefficients(N, gamma);
  return (((c[0] * alpha + c[1]) * alpha + c[2]) * alpha + c[3]) * alpha + c[4];
}

double indicial_polynomial(int N, double alpha) {
  require_dimension(N);
  return alpha * (N - alpha) * (alpha + 2.0) * (N - alpha - 2.0);
}

IndicialRoots indicial_roots(const DimensionConfig& cfg) {
  require_dimension(cfg.N);
  const double n = cfg.N;
  const double upper = hardy_half_space(cfg.N);
  if (!(cfg.gamma >= -n * n)) throw DomainError("indicial roots require gamma >= -N^2");
  if (!(cfg.gamma < upper)) {
    throw DomainError("indicial roots require gamma < (N^2-4)^2/16 = " + std::to_string(upper));
  }
  const double root_term = std::sqrt(n * n + cfg.gamma);
  // N^2 + 4 - 4 sqrt(N^2 + gamma), rewritten without cancellation near gamma_{H,+}.
  const double inner_minus = 16.0 * (upper - cfg.gamma) / (n * n + 4.0 + 4.0 * root_term);
  const double inner_plus = n * n + 4.0 + 4.0 * root_term;
  if (inner_minus < 0.0) throw NumericalError("negative discriminant in indicial roots");

  const double centre = (n - 2.0) / 2.0;
  const double half_alpha = 0.5 * std::sqrt(inner_minus);
  const double half_beta = 0.5 * std::sqrt(inner_plus);

  IndicialRoots out;
  out.alpha_minus = centre - half_alpha;
  out.alpha_plus = centre + half_alpha;
  out.beta_minus = centre - half_beta;
  out.beta_plus = centre + half_beta;

  const double roots[4] = {out.alpha_minus, out.alpha_plus, out.beta_minus, out.beta_plus};
  for (int i = 0; i < 4; ++i) {
    out.residuals[i] = std::abs(indicial_quartic(cfg.N, cfg.gamma, roots[i]));
  }
  double scale = 0.0;
  for (double c : indicial_quartic_coefficients(cfg.N, cfg.gamma)) scale = std::max(scale, std::abs(c));
  out.coefficient_scale = scale;
  return out;
}

double sphere_area(int N) {
  if (N < 1) throw DomainError("sphere dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, N / 2.0) / gamma_fn(N / 2.0);
}

double sphere_moment(int N, double q) {
  if (N < 2) throw DomainError("sphere moment requires N >= 2");
  if (!(q > -1.0)) throw DomainError("sphere moment diverges for q <= -1");
  return std::pow(std::numbers::pi, (N - 1) / 2.0) * gamma_ratio((q + 1.0) / 2.0, (N + q) / 2.0);
}

double sphere_moment_monte_carlo(int N, double q, std::uint64_t samples, std::uint64_t seed) {
  if (N < 2) throw DomainError("sphere moment requires N >= 2");
  if (!(q > -1.0)) throw DomainError("sphere moment diverges for q <= -1");
  if (samples == 0) throw DomainError("Monte-Carlo estimate needs at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double sum = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    double first = normal(rng);
    double norm2 = first * first;
    for (int d = 1; d < N; ++d) {
      const double x = normal(rng);
      norm2 += x * x;
    }
    if (first > 0.0) sum += std::pow(first / std::sqrt(norm2), q);
  }
  return sphere_area(N) * sum / static_cast<double>(samples);
}

double beta_star(int N, double s, double q0, double qs) {
  require_dimension(N);
  if (!(s >= 0.0) || !(s < 4.0)) throw DomainError("beta_star requires 0 <= s < 4");
  if (!(q0 > 0.0) || !(qs > 0.0)) throw DomainError("beta_star requires positive Q values");
  const double sobolev_level = (2.0 / N) * std::pow(q0, N / 4.0);
  const double hardy_level = ((4.0 - s) / (2.0 * (N - s))) * std::pow(qs, (N - s) / (4.0 - s));
  return std::min(sobolev_level, hardy_level);
}

}  // namespace rellich

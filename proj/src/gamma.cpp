#include "rellich/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rellich/errors.hpp"

namespace rellich {

namespace {

constexpr double kExactLimit = 170.0;
// Below this the Stirling series is reached by upward recurrence.
constexpr double kStirlingStart = 15.0;

bool is_integer(double x) { return x == std::floor(x); }
bool is_half_integer(double x) { return is_integer(x - 0.5); }

// ln Gamma(y) - [(y - 1/2) ln y - y + ln(2 pi)/2] for y >= 15, through B_14.
double stirling_correction(double y) {
  constexpr std::array<double, 7> c = {1.0 / 12.0,    -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
                                       1.0 / 1188.0,  -691.0 / 360360.0,  1.0 / 156.0};
  const double inv = 1.0 / y;
  const double inv2 = inv * inv;
  double sum = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) sum = sum * inv2 + c[k];
  return sum * inv;
}

struct Shifted {
  double y;        // x + n >= kStirlingStart
  double product;  // x (x+1) ... (x+n-1)
};

Shifted shift_up(double x) {
  Shifted s{x, 1.0};
  while (s.y < kStirlingStart) {
    s.product *= s.y;
    s.y += 1.0;
  }
  return s;
}

// Gamma(x) for x >= 0.5.
double gamma_positive(double x) {
  const Shifted s = shift_up(x);
  const double half_power = std::pow(s.y, 0.5 * (s.y - 0.5));
  const double value = std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-s.y)) *
                       std::exp(stirling_correction(s.y));
  return value / s.product;
}

double log_gamma_positive(double x) {
  const Shifted s = shift_up(x);
  return (s.y - 0.5) * std::log(s.y) - s.y + 0.5 * std::log(2.0 * std::numbers::pi) +
         stirling_correction(s.y) - std::log(s.product);
}

// Exact product for integer / half-integer x in (0, 170].
double exact_product(double x) {
  double value = is_integer(x) ? 1.0 : std::sqrt(std::numbers::pi);
  for (double k = is_integer(x) ? 1.0 : 0.5; k < x; k += 1.0) value *= k;
  return value;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0) && is_integer(x)) {
    throw DomainError("Gamma has poles at non-positive integers");
  }
  if (x > 0.0 && x <= kExactLimit && (is_integer(x) || is_half_integer(x))) {
    return exact_product(x);
  }
  if (x < 0.5) {
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_positive(1.0 - x));
  }
  return gamma_positive(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  if (x <= kExactLimit && (is_integer(x) || is_half_integer(x))) {
    return std::log(exact_product(x));
  }
  if (x < 0.5) return std::log(gamma_fn(x));
  return log_gamma_positive(x);
}

double gamma_ratio(double a, double b) {
  if (a > 0.0 && b > 0.0 && (a > 150.0 || b > 150.0)) {
    return std::exp(log_gamma(a) - log_gamma(b));
  }
  return gamma_fn(a) / gamma_fn(b);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("Beta requires positive arguments");
  if (a + b > 150.0) return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
  return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
}

}  // namespace rellich

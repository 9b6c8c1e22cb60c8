#pragma once

namespace rellich {

/// Euler Gamma function on the positive axis (reflection is used below 1/2).
///
/// Integer and half-integer arguments up to 170 are evaluated as exact
/// products. Other arguments are shifted above 15 by recurrence and evaluated
/// with the Stirling series; relative error is a few ulps on [0.5, 50].
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Gamma(a) / Gamma(b), switching to logarithms when either factor would overflow.
double gamma_ratio(double a, double b);

/// Euler Beta function B(a, b) for a, b > 0.
double beta_fn(double a, double b);

}  // namespace rellich

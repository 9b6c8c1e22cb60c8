#pragma once

// Functions of r sampled on a uniform grid in t = ln r: derivatives, the
// radial operators that act on the factor f of u = x1 f(|x|), and
// integration against power weights.

#include <cstddef>
#include <span>
#include <vector>

namespace rellich {

/// Uniform grid in t = ln r.
class LogGrid {
 public:
  static constexpr std::size_t kMinPoints = 16;

  LogGrid(double t_min, double t_max, std::size_t n_points);

  /// Smallest grid on [t_min, t_max] whose spacing does not exceed max_spacing.
  static LogGrid with_spacing(double t_min, double t_max, double max_spacing);

  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }
  double t(std::size_t i) const noexcept { return t_min_ + static_cast<double>(i) * h_; }
  double r(std::size_t i) const;

  bool operator==(const LogGrid&) const = default;

 private:
  double t_min_;
  double t_max_;
  std::size_t n_;
  double h_;
};

/// Values of a radial function at the nodes of a LogGrid.
class GridFunction {
 public:
  GridFunction(LogGrid grid, std::vector<double> values);

  template <class F>
  static GridFunction sample(const LogGrid& grid, F&& f_of_r) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f_of_r(grid.r(i));
    return GridFunction(grid, std::move(v));
  }

  const LogGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  LogGrid grid_;
  std::vector<double> values_;
};

/// Finite-difference weights (Fornberg) for the m-th derivative at z from
/// the given nodes. Row k of the result holds the weights of derivative k.
std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> nodes, int m);

/// One row of a difference operator: weights applied to values[first ...].
struct StencilRow {
  std::size_t first = 0;
  std::vector<double> weights;
};

/// Sixth-order difference stencils in t with unit spacing: 7-point central
/// in the interior, 8-point one-sided on the three nodes nearest each end.
class DifferenceStencils {
 public:
  static constexpr int kOrder = 6;
  static constexpr std::size_t kHalfWidth = 3;

  explicit DifferenceStencils(std::size_t n_points);

  /// Row for derivative `order` (1 or 2) at node i, unit spacing.
  const StencilRow& row(int order, std::size_t i) const;

  /// Central weights for offsets -3..3, unit spacing.
  static std::span<const double> central(int order);

  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::vector<StencilRow> first_left_, first_right_, second_left_, second_right_;
  StencilRow first_interior_, second_interior_;
};

/// d^order/dt^order of nodal values with spacing h (order 1 or 2).
std::vector<double> t_derivative(std::span<const double> values, double h, int order);

/// df/dr (order 1) or d^2f/dr^2 (order 2) via the chain rule in t.
GridFunction derivative(const GridFunction& f, int order);

/// f'' + (N+1) f'/r, i.e. Delta(x1 f(|x|)) = x1 (reduced_laplacian f)(|x|).
GridFunction reduced_laplacian(const GridFunction& f, int N);

/// f'' + (N-1) f'/r, the Laplacian of a radial function in R^N.
GridFunction radial_laplacian(const GridFunction& f, int N);

enum class Truncation { Reject, Acknowledge };

/// Relative size below which an integrand counts as decayed at a grid end.
inline constexpr double kDecayTolerance = 1e-12;

/// Quadrature weights (spacing included) of the fourth-order end-corrected
/// trapezoid rule: 3/8, 7/6, 23/24, 1, ..., 1, 23/24, 7/6, 3/8.
std::vector<double> quadrature_weights(const LogGrid& grid);

/// Integral over the grid span of a function of t given at the nodes.
double integrate_t(const LogGrid& grid, std::span<const double> integrand,
                   Truncation policy = Truncation::Reject);

/// Integral over r of g(r) r^p, i.e. the t-integral of g(e^t) e^{(p+1)t}.
double integrate_weighted(const GridFunction& g, double power_p,
                          Truncation policy = Truncation::Reject);

/// Running trapezoid integral of a function of t (first entry 0).
std::vector<double> cumulative_integral(const LogGrid& grid, std::span<const double> integrand);

}  // namespace rellich

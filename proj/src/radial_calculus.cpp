#include "rellich/radial_calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "rellich/errors.hpp"

namespace rellich {

LogGrid::LogGrid(double t_min, double t_max, std::size_t n_points)
    : t_min_(t_min), t_max_(t_max), n_(n_points), h_(0.0) {
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min < t_max)) {
    throw ConfigurationError("log grid requires finite t_min < t_max");
  }
  if (n_points < kMinPoints) {
    throw ConfigurationError("log grid requires at least 16 points (got " +
                             std::to_string(n_points) + ")");
  }
  h_ = (t_max - t_min) / static_cast<double>(n_points - 1);
}

LogGrid LogGrid::with_spacing(double t_min, double t_max, double max_spacing) {
  if (!(max_spacing > 0.0)) throw ConfigurationError("grid spacing must be positive");
  const double intervals = std::ceil((t_max - t_min) / max_spacing - 1e-9);
  const auto n = std::max<std::size_t>(kMinPoints, static_cast<std::size_t>(intervals) + 1);
  return LogGrid(t_min, t_max, n);
}

double LogGrid::r(std::size_t i) const { return std::exp(t(i)); }

GridFunction::GridFunction(LogGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ConfigurationError("grid function length does not match its grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw NumericalError("grid function contains non-finite values");
  }
}

std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> x, int m) {
  const std::size_t n = x.size();
  if (n == 0 || m < 0 || static_cast<std::size_t>(m) >= n) {
    throw DomainError("fornberg_weights needs more nodes than the derivative order");
  }
  std::vector<std::vector<double>> c(static_cast<std::size_t>(m) + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

constexpr std::size_t kBoundaryNodes = 8;

StencilRow make_row(double z, std::size_t first, std::size_t count, int order) {
  std::vector<double> nodes(count);
  for (std::size_t j = 0; j < count; ++j) nodes[j] = static_cast<double>(first + j);
  auto w = fornberg_weights(z, nodes, order);
  return StencilRow{first, std::move(w[static_cast<std::size_t>(order)])};
}

const std::array<std::vector<double>, 2>& central_tables() {
  static const std::array<std::vector<double>, 2> tables = [] {
    std::vector<double> nodes = {-3, -2, -1, 0, 1, 2, 3};
    auto w = fornberg_weights(0.0, nodes, 2);
    return std::array<std::vector<double>, 2>{w[1], w[2]};
  }();
  return tables;
}

}  // namespace

DifferenceStencils::DifferenceStencils(std::size_t n_points) : n_(n_points) {
  if (n_points < LogGrid::kMinPoints) throw ConfigurationError("stencils need at least 16 points");
  const std::size_t last = n_points - 1;
  for (std::size_t i = 0; i < kHalfWidth; ++i) {
    first_left_.push_back(make_row(static_cast<double>(i), 0, kBoundaryNodes, 1));
    second_left_.push_back(make_row(static_cast<double>(i), 0, kBoundaryNodes, 2));
    const std::size_t node = last - i;
    first_right_.push_back(make_row(static_cast<double>(node), n_points - kBoundaryNodes, kBoundaryNodes, 1));
    second_right_.push_back(make_row(static_cast<double>(node), n_points - kBoundaryNodes, kBoundaryNodes, 2));
  }
  first_interior_ = StencilRow{0, central_tables()[0]};
  second_interior_ = StencilRow{0, central_tables()[1]};
}

std::span<const double> DifferenceStencils::central(int order) {
  if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
  return central_tables()[static_cast<std::size_t>(order - 1)];
}

const StencilRow& DifferenceStencils::row(int order, std::size_t i) const {
  if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
  const bool first = order == 1;
  if (i < kHalfWidth) return first ? first_left_[i] : second_left_[i];
  if (i + kHalfWidth >= n_) {
    const std::size_t k = n_ - 1 - i;
    return first ? first_right_[k] : second_right_[k];
  }
  // interior rows share weights; callers offset by i - kHalfWidth
  thread_local StencilRow shifted;
  shifted.first = i - kHalfWidth;
  shifted.weights = first ? first_interior_.weights : second_interior_.weights;
  return shifted;
}

std::vector<double> t_derivative(std::span<const double> values, double h, int order) {
  if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
  const std::size_t n = values.size();
  if (n < LogGrid::kMinPoints) throw ConfigurationError("derivative needs at least 16 points");
  const DifferenceStencils stencils(n);
  const double scale = order == 1 ? 1.0 / h : 1.0 / (h * h);
  std::vector<double> out(n, 0.0);
  const auto central = DifferenceStencils::central(order);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    if (i >= DifferenceStencils::kHalfWidth && i + DifferenceStencils::kHalfWidth < n) {
      const std::size_t first = i - DifferenceStencils::kHalfWidth;
      for (std::size_t j = 0; j < central.size(); ++j) acc += central[j] * values[first + j];
    } else {
      const StencilRow& row = stencils.row(order, i);
      for (std::size_t j = 0; j < row.weights.size(); ++j) acc += row.weights[j] * values[row.first + j];
    }
    out[i] = acc * scale;
  }
  return out;
}

namespace {

// r^2 * (f'' + c f'/r) = f_tt + (c - 1) f_t
GridFunction radial_operator(const GridFunction& f, double first_order_coefficient) {
  const LogGrid& grid = f.grid();
  const auto ft = t_derivative(f.values(), grid.spacing(), 1);
  const auto ftt = t_derivative(f.values(), grid.spacing(), 2);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double inv_r2 = std::exp(-2.0 * grid.t(i));
    out[i] = inv_r2 * (ftt[i] + (first_order_coefficient - 1.0) * ft[i]);
  }
  return GridFunction(grid, std::move(out));
}

}  // namespace

GridFunction derivative(const GridFunction& f, int order) {
  if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
  const LogGrid& grid = f.grid();
  const auto ft = t_derivative(f.values(), grid.spacing(), 1);
  std::vector<double> out(f.size());
  if (order == 1) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(-grid.t(i)) * ft[i];
  } else {
    const auto ftt = t_derivative(f.values(), grid.spacing(), 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::exp(-2.0 * grid.t(i)) * (ftt[i] - ft[i]);
    }
  }
  return GridFunction(grid, std::move(out));
}

GridFunction reduced_laplacian(const GridFunction& f, int N) {
  if (N < 5) throw DomainError("reduced_laplacian requires N >= 5");
  return radial_operator(f, N + 1.0);
}

GridFunction radial_laplacian(const GridFunction& f, int N) {
  if (N < 1) throw DomainError("radial_laplacian requires N >= 1");
  return radial_operator(f, N - 1.0);
}

std::vector<double> quadrature_weights(const LogGrid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> w(n, grid.spacing());
  constexpr std::array<double, 3> ends = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
  for (std::size_t k = 0; k < ends.size(); ++k) {
    w[k] = ends[k] * grid.spacing();
    w[n - 1 - k] = ends[k] * grid.spacing();
  }
  return w;
}

double integrate_t(const LogGrid& grid, std::span<const double> integrand, Truncation policy) {
  if (integrand.size() != grid.size()) throw ConfigurationError("integrand length does not match grid");
  double peak = 0.0;
  for (double v : integrand) peak = std::max(peak, std::abs(v));
  if (policy == Truncation::Reject && peak > 0.0) {
    const double left = std::abs(integrand.front());
    const double right = std::abs(integrand.back());
    if (left > kDecayTolerance * peak || right > kDecayTolerance * peak) {
      throw TruncationError(left, right, peak);
    }
  }
  const auto w = quadrature_weights(grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * integrand[i];
  return sum;
}

double integrate_weighted(const GridFunction& g, double power_p, Truncation policy) {
  const LogGrid& grid = g.grid();
  std::vector<double> integrand(g.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) {
    integrand[i] = g[i] * std::exp((power_p + 1.0) * grid.t(i));
  }
  return integrate_t(grid, integrand, policy);
}

std::vector<double> cumulative_integral(const LogGrid& grid, std::span<const double> integrand) {
  if (integrand.size() != grid.size()) throw ConfigurationError("integrand length does not match grid");
  std::vector<double> out(integrand.size(), 0.0);
  const double half_h = 0.5 * grid.spacing();
  for (std::size_t i = 1; i < out.size(); ++i) {
    out[i] = out[i - 1] + half_h * (integrand[i - 1] + integrand[i]);
  }
  return out;
}

}  // namespace rellich

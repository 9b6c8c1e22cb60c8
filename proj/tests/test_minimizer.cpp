#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rellich/constants.hpp"
#include "rellich/errors.hpp"
#include "rellich/minimizer.hpp"

using namespace rellich;

namespace {

// Largest relative first variation of the quotient along random smooth
// directions, by symmetric differences.
double directional_stationarity(const RadialProfile& p, const DimensionConfig& cfg, int directions,
                                unsigned seed) {
  const LogGrid& grid = p.grid();
  const int N = p.N();
  const double base = rayleigh_quotient(p, cfg);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-4.0, 4.0), width(0.5, 2.0), amp(-1.0, 1.0);
  double gmax = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    gmax = std::max(gmax, std::abs(p.f()[i]) * std::exp(0.5 * (N - 2) * grid.t(i)));
  }
  double worst = 0.0;
  for (int d = 0; d < directions; ++d) {
    const double m = centre(rng), s = width(rng), c = amp(rng);
    // same r^{-(N-2)/2} envelope as the profile, scaled to its peak in g
    std::vector<double> dir(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = grid.t(i);
      dir[i] = gmax * c * std::exp(-0.5 * std::pow((t - m) / s, 2)) * std::exp(-0.5 * (N - 2) * t);
    }
    const double tau = 1e-4;
    auto at = [&](double sign) {
      std::vector<double> v(grid.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = p.f()[i] + sign * tau * dir[i];
      return rayleigh_quotient(RadialProfile(GridFunction(grid, std::move(v)), N), cfg);
    };
    worst = std::max(worst, std::abs(at(1.0) - at(-1.0)) / (2.0 * tau * base));
  }
  return worst;
}

}  // namespace

TEST_SUITE("minimizer") {
  const DimensionConfig kCfg{8, 1.0, 100.0};

  TEST_CASE("converged profile is stationary") {
    const LogGrid grid(-20.0, 20.0, 2048);
    const auto init = default_initial_profile(8, grid);
    const auto report = minimize_quotient(kCfg, grid);
    CHECK(report.el_residual <= 1e-6);
    CHECK(report.q_estimate <= rayleigh_quotient(init, kCfg));
    for (std::size_t i = 1; i < report.objective_history.size(); ++i)
      CHECK(report.objective_history[i] <= report.objective_history[i - 1]);
    CHECK(report.q_estimate == doctest::Approx(rayleigh_quotient(report.profile, kCfg)).epsilon(1e-8));
    CHECK(report.stop_reason.rfind("converged", 0) == 0);

    const double oracle_converged = directional_stationarity(report.profile, kCfg, 20, 17);
    const double oracle_initial = directional_stationarity(init, kCfg, 20, 17);
    CHECK(oracle_converged <= 1e-6);
    CHECK(oracle_initial >= 1e-3);
  }

  TEST_CASE("Euler-Lagrange residual on reference profiles") {
    const LogGrid grid(-6.0, 6.0, 2048);
    const double a = indicial_roots({8, 0.0, 100.0}).alpha_minus;
    const RadialProfile power(GridFunction::sample(grid, [a](double r) { return std::pow(r, -a); }), 8);
    CHECK(euler_lagrange_residual(power, {8, 1.0, 100.0}, true) <= 1e-5);

    const LogGrid wide(-20.0, 20.0, 2048);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(wide.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double t = wide.t(i);
      v[i] = std::exp(-t * t / 8.0 - 3.0 * t) * (1.0 + 0.5 * std::sin(3.0 * t + u(rng)));
    }
    CHECK(euler_lagrange_residual(RadialProfile(GridFunction(wide, v), 8), kCfg) >= 1e-2);
  }

  TEST_CASE("monotone in gamma") {
    const LogGrid grid(-20.0, 20.0, 1024);
    double prev = INFINITY;
    for (double gamma : {-200.0, -100.0, 0.0, 100.0, 200.0}) {
      const double q = minimize_quotient({8, 1.0, gamma}, grid).q_estimate;
      CHECK(q < prev);
      prev = q;
    }
  }

  TEST_CASE("grid doubling") {
    const double q2 = minimize_quotient(kCfg, LogGrid(-20.0, 20.0, 2048)).q_estimate;
    const double q4 = minimize_quotient(kCfg, LogGrid(-20.0, 20.0, 4096)).q_estimate;
    CHECK(std::abs(q4 - q2) < 5e-3 * q4);
  }

  TEST_CASE("conformal rescale of the start does not change the result") {
    const LogGrid grid(-20.0, 20.0, 2048);
    const auto init = default_initial_profile(8, grid);
    const double base = minimize_quotient(kCfg, grid, init).q_estimate;
    for (int k = -8; k <= 8; k += 4) {
      const auto shifted = conformal_rescale(init, std::exp(k * grid.spacing())).profile;
      CHECK(minimize_quotient(kCfg, grid, shifted).q_estimate == doctest::Approx(base).epsilon(1e-8));
    }
  }

  TEST_CASE("multi-start is deterministic and thread independent") {
    const LogGrid grid(-20.0, 20.0, 1024);
    const auto serial = minimize_multistart(kCfg, grid, 3, 1);
    const auto threaded = minimize_multistart(kCfg, grid, 3, 3);
    REQUIRE(serial.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(serial[i].q_estimate == threaded[i].q_estimate);
    CHECK(&best_report(serial) != nullptr);
  }

  TEST_CASE("upper bound report") {
    const LogGrid grid(-20.0, 20.0, 1024);
    const auto s2 = q_upper_bound_report({8, 2.0, 0.0}, grid);
    CHECK(s2.bound > 0.0);
    CHECK(std::isfinite(s2.bound));
    CHECK(s2.channel == "ansatz");
    CHECK_FALSE(s2.bubble_bound.has_value());

    const auto b9 = q_upper_bound_report({9, 0.0, 100.0}, grid);
    REQUIRE(b9.bubble_bound.has_value());
    CHECK(*b9.bubble_bound < b9.s_n_estimate);
    CHECK(b9.below_sobolev);
    CHECK(b9.bound <= *b9.bubble_bound);

    const auto neg = q_upper_bound_report({9, 0.0, -50.0}, grid);
    CHECK(neg.bound >= neg.s_n_estimate * (1.0 - 1e-3));
    CHECK_FALSE(neg.below_sobolev);
  }

  TEST_CASE("invalid configurations") {
    const LogGrid grid(-20.0, 20.0, 256);
    CHECK_THROWS_AS(minimize_quotient({8, 1.0, 300.0}, grid), DomainError);
    CHECK_THROWS_AS(minimize_quotient({8, 4.0, 0.0}, grid), DomainError);
    CHECK_THROWS_AS(minimize_quotient({8, 1.0, 0.0}, grid, default_initial_profile(8, LogGrid(-20.0, 20.0, 512))),
                    ConfigurationError);
  }
}

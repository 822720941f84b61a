#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polarmax/closed_forms.hpp"
#include "polarmax/covering.hpp"
#include "polarmax/solver.hpp"

using namespace polarmax;

namespace {

constexpr double kPi = std::numbers::pi;

// Largest distance from a fine circle grid to the nearest configuration point.
double circle_cover_radius(const Configuration& c, int grid = 20000) {
  double worst = 0;
  for (int i = 0; i < grid; ++i) {
    const double t = 2 * kPi * i / grid;
    const Point y = Eigen::Vector2d(std::cos(t), std::sin(t));
    worst = std::max(worst, (c.points().colwise() - y).colwise().norm().minCoeff());
  }
  return worst;
}

}  // namespace

TEST_SUITE("covering") {
  TEST_CASE("closed-form unconstrained circle covers") {
    CHECK(circle_unconstrained_cover(1).eta == doctest::Approx(1.0));
    CHECK(circle_unconstrained_cover(2).eta == doctest::Approx(1.0));
    for (int n = 3; n <= 12; ++n) {
      const CoverReport r = circle_unconstrained_cover(n);
      CAPTURE(n);
      CHECK(r.eta == doctest::Approx(std::sin(kPi / n)).epsilon(1e-14));
      CHECK(circle_cover_radius(r.config) == doctest::Approx(r.eta).epsilon(1e-6));
    }
  }

  TEST_CASE("half-angle identity behind the transfer") {
    for (int n = 2; n <= 50; ++n) {
      const double t = kPi / n;
      CHECK(std::abs(std::pow(1 - std::cos(t), 2) + std::pow(std::sin(t), 2) - 4 * std::pow(std::sin(t / 2), 2)) <= 1e-12);
    }
  }

  TEST_CASE("transferring the constrained polygon gives the unconstrained cover") {
    for (int n = 3; n <= 12; ++n) {
      const Configuration polygon = regular_polygon(n, 1.0);
      const TransferResult t = sphere_transfer(2 * std::sin(kPi / (2 * n)), polygon);
      CAPTURE(n);
      CHECK(t.eta_star == doctest::Approx(std::sin(kPi / n)).epsilon(1e-12));
      CHECK(t.r == doctest::Approx(std::cos(kPi / n)).epsilon(1e-12));
      CHECK(circle_cover_radius(t.config) == doctest::Approx(t.eta_star).epsilon(1e-6));
    }
    CHECK_THROWS_AS(sphere_transfer(1.5, regular_polygon(4, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(sphere_transfer(0.5, regular_polygon(2, 1.0)), std::invalid_argument);
  }

  TEST_CASE("optimizer reproduces the circle covers") {
    CoverOptions opts;
    opts.restarts = 2;
    for (int n : {3, 5, 8}) {
      const CoverReport u = minimize_covering(Domain::circle(), n, opts);
      CAPTURE(n);
      CHECK(u.eta == doctest::Approx(std::sin(kPi / n)).epsilon(1e-3));
    }
    opts.mode = Mode::constrained;
    const CoverReport c = minimize_covering(Domain::circle(), 6, opts);
    CHECK(c.eta == doctest::Approx(2 * std::sin(kPi / 12)).epsilon(1e-3));
    for (int i = 0; i < 6; ++i) CHECK(Domain::circle().contains(c.config.point(i), 1e-12));
  }

  TEST_CASE("too few points cannot beat the center") {
    CoverOptions opts;
    opts.restarts = 2;
    CHECK(minimize_covering(Domain::circle(), 2, opts).eta == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(minimize_covering(Domain::sphere(3), 3, opts).eta == doctest::Approx(1.0).epsilon(1e-3));
  }

  TEST_CASE("tetrahedron cover of the sphere") {
    // Constrained: |v_i + v_j|^2 = 4/3; transferred: sqrt(1 - rho^2) = 1/3.
    CoverOptions opts;
    opts.restarts = 2;
    opts.mode = Mode::constrained;
    CHECK(minimize_covering(Domain::sphere(3), 4, opts).eta == doctest::Approx(std::sqrt(4.0 / 3)).epsilon(2e-3));
    opts.mode = Mode::unconstrained;
    CHECK(minimize_covering(Domain::sphere(3), 4, opts).eta == doctest::Approx(std::sqrt(8.0 / 9)).epsilon(2e-3));
  }

  TEST_CASE("the interval is covered from cell centers") {
    CoverOptions opts;
    opts.restarts = 1;
    const CoverReport r = minimize_covering(Domain::interval(0, 1), 2, opts);
    CHECK(r.eta == doctest::Approx(0.25).epsilon(1e-3));
    const double lo = std::min(r.config.point(0)[0], r.config.point(1)[0]);
    const double hi = std::max(r.config.point(0)[0], r.config.point(1)[0]);
    CHECK(lo == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.75).epsilon(1e-3));
  }

  TEST_CASE("polarization approaches the covering radius as s grows") {
    // (P_s*)^(-1/s) -> eta*: on the circle it climbs to sin(pi/N) from below.
    const int n = 8;
    const double eta = std::sin(kPi / n);
    SolveOptions opts;
    opts.restarts = 2;
    double previous = 0;
    for (double s : {16.0, 32.0, 64.0}) {
      const double v = maximize_polarization(KernelSpec::riesz(s), Domain::circle(), n, opts).report.value;
      const double bridge = std::pow(v, -1 / s);
      CAPTURE(s);
      CHECK(bridge == doctest::Approx(std::pow(circle_optimal_value(n, s), -1 / s)).epsilon(1e-6));
      CHECK(bridge > previous);
      CHECK(bridge < eta);
      previous = bridge;
    }
    CHECK(eta - previous < 1e-2);
  }

  TEST_CASE("cross-check runs the large-s solver") {
    CoverOptions opts;
    opts.restarts = 1;
    opts.cross_check = true;
    const CoverReport r = minimize_covering(Domain::circle(), 4, opts);
    REQUIRE(std::isfinite(r.cross_check_eta));
    CHECK(r.cross_check_eta >= r.eta - 1e-3);
    CHECK(r.cross_check_eta == doctest::Approx(std::sin(kPi / 4)).epsilon(5e-2));
  }

  TEST_CASE("two-plate covering is rejected") {
    CoverOptions opts;
    opts.mode = Mode::two_plate;
    CHECK_THROWS_AS(minimize_covering(Domain::circle(), 3, opts), std::invalid_argument);
  }

  TEST_CASE("octahedron transferred inward covers the sphere") {
    // Face center to nearest vertex: |e1 - (1,1,1)/sqrt3|^2 = 2 - 2/sqrt3.
    PointSet oct(3, 6);
    oct << 1, -1, 0, 0, 0, 0,
           0, 0, 1, -1, 0, 0,
           0, 0, 0, 0, 1, -1;
    const double eta = std::sqrt(2 - 2 / std::sqrt(3.0));
    const TransferResult t = sphere_transfer(eta, Configuration(oct));
    CHECK(std::pow(1 - std::sqrt(1 - t.eta_star * t.eta_star), 2) + t.eta_star * t.eta_star ==
          doctest::Approx(eta * eta).epsilon(1e-12));
    const PointSet grid = Domain::sphere(3).sample(2000);
    double worst = 0;
    for (int j = 0; j < grid.cols(); ++j)
      worst = std::max(worst, (t.config.points().colwise() - grid.col(j)).colwise().norm().minCoeff());
    CHECK(worst <= t.eta_star + 1e-12);
    CHECK(worst >= t.eta_star - 2e-2);
  }
}

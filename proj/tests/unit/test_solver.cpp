#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polarmax/closed_forms.hpp"
#include "polarmax/solver.hpp"

using namespace polarmax;

namespace {

constexpr double kPi = std::numbers::pi;

double max_norm(const Configuration& c) { return c.points().colwise().norm().maxCoeff(); }

// Potential of the equally spaced N points on the unit circle at an arc
// midpoint, the constrained optimum.
double equally_spaced_value(int n, double s) {
  double acc = 0;
  for (int j = 0; j < n; ++j) acc += std::pow(2 - 2 * std::cos((2 * j + 1) * kPi / n), -s / 2);
  return acc;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("few points collapse to the center of the sphere") {
    SolveOptions opts;
    opts.restarts = 2;
    const SolveResult r = maximize_polarization(KernelSpec::riesz(2), Domain::sphere(3), 3, opts);
    CHECK(r.success);
    CHECK(max_norm(r.config) <= 1e-3);
    CHECK(r.report.value == doctest::Approx(3.0).epsilon(1e-6));
  }

  TEST_CASE("superharmonic exponent keeps every point at the center") {
    SolveOptions opts;
    opts.restarts = 2;
    const SolveResult r = maximize_polarization(KernelSpec::riesz(1), Domain::sphere(3), 5, opts);
    CHECK(max_norm(r.config) <= 1e-3);
    CHECK(r.report.value == doctest::Approx(5.0).epsilon(1e-6));
  }

  TEST_CASE("octagon on the circle at the optimal radius") {
    SolveOptions opts;
    const SolveResult r = maximize_polarization(KernelSpec::riesz(2), Domain::circle(), 8, opts);
    const double r_bar = circle_optimal_radius(8, 2.0);
    CHECK(r.report.value == doctest::Approx(circle_optimal_value(8, 2.0)).epsilon(1e-4));
    CHECK(max_gap_deviation(r.config) <= 1e-3);
    for (int i = 0; i < 8; ++i) CHECK(r.config.point(i).norm() == doctest::Approx(r_bar).epsilon(1e-3));
    CHECK(stay_away_distance(r.config, Domain::circle()) == doctest::Approx(1 - r_bar).epsilon(1e-3));
  }

  TEST_CASE("cold starts still find the circle optimum") {
    SolveOptions opts;
    opts.warm_start = false;
    const SolveResult u = maximize_polarization(KernelSpec::riesz(2), Domain::circle(), 16, opts);
    CHECK(u.report.value == doctest::Approx(circle_optimal_value(16, 2.0)).epsilon(1e-4));
    opts.mode = Mode::constrained;
    const SolveResult c = maximize_polarization(KernelSpec::riesz(4), Domain::circle(), 8, opts);
    CHECK(c.report.value == doctest::Approx(equally_spaced_value(8, 4.0)).epsilon(1e-6));
    CHECK(max_gap_deviation(c.config) <= 1e-3);
  }

  TEST_CASE("constrained circle solutions are equally spaced") {
    for (double s : {1.0, 2.0, 4.0}) {
      for (int n : {4, 8, 16}) {
        SolveOptions opts;
        opts.mode = Mode::constrained;
        opts.restarts = 2;
        const SolveResult r = maximize_polarization(KernelSpec::riesz(s), Domain::circle(), n, opts);
        CAPTURE(s);
        CAPTURE(n);
        CHECK(max_gap_deviation(r.config) <= 1e-3);
        CHECK(r.report.value == doctest::Approx(equally_spaced_value(n, s)).epsilon(1e-8));
        for (int i = 0; i < n; ++i) CHECK(Domain::circle().contains(r.config.point(i), 1e-12));
      }
    }
  }

  TEST_CASE("two plates: concentric circle inside the band gives a regular polygon") {
    const int n = 8;
    const double s = 2.0;
    const CircleThresholds t = concentric_thresholds(n, s);
    for (double rho : {0.8, 1.5}) {
      REQUIRE(t.band_condition(rho));
      SolveOptions opts;
      opts.mode = Mode::two_plate;
      opts.plate = Domain::circle(rho);
      opts.restarts = 2;
      const SolveResult r = maximize_polarization(KernelSpec::riesz(s), Domain::circle(), n, opts);
      CHECK(max_gap_deviation(r.config) <= 1e-3);
      for (int i = 0; i < n; ++i) CHECK(r.config.point(i).norm() == doctest::Approx(rho).epsilon(1e-12));
    }
  }

  TEST_CASE("unconstrained points stay in the convex hull") {
    SolveOptions opts;
    opts.warm_start = false;
    opts.restarts = 2;
    opts.iterations = 400;
    for (const Domain& A : {Domain::circle(), Domain::cube(2), Domain::interval(0, 1)}) {
      const SolveResult r = maximize_polarization(KernelSpec::riesz(1.5), A, 5, opts);
      for (int i = 0; i < r.config.size(); ++i) CHECK((A.project_hull(r.config.point(i)) - r.config.point(i)).norm() <= 1e-10);
    }
  }

  TEST_CASE("result never falls below the warm start") {
    SolveOptions opts;
    opts.restarts = 3;
    const SolveResult r = maximize_polarization(KernelSpec::riesz(3), Domain::sphere(3), 4, opts);
    REQUIRE(std::isfinite(r.warm_start_value));
    CHECK(r.report.value >= r.warm_start_value);
    for (double v : r.restart_values) CHECK(r.report.value >= v);
  }

  TEST_CASE("identical output for any thread count") {
    SolveOptions opts;
    opts.restarts = 5;
    opts.iterations = 400;
    opts.seed = 17;
    opts.threads = 1;
    const SolveResult one = maximize_polarization(KernelSpec::riesz(2), Domain::sphere(3), 7, opts);
    opts.threads = 4;
    const SolveResult four = maximize_polarization(KernelSpec::riesz(2), Domain::sphere(3), 7, opts);
    CHECK(one.config.points() == four.config.points());
    CHECK(one.report.value == four.report.value);
    CHECK(one.best_restart == four.best_restart);
    CHECK(one.restart_values == four.restart_values);
  }

  TEST_CASE("stay-away distance matches the optimal ring") {
    for (int n : {8, 16, 32}) {
      SolveOptions opts;
      opts.restarts = 1;
      const SolveResult r = maximize_polarization(KernelSpec::riesz(2), Domain::circle(), n, opts);
      const double gap = 1 - circle_optimal_radius(n, 2.0);
      CAPTURE(n);
      CHECK(stay_away_distance(r.config, Domain::circle()) == doctest::Approx(gap).epsilon(1e-2));
    }
  }

  TEST_CASE("option validation") {
    SolveOptions opts;
    opts.restarts = 0;
    CHECK_THROWS_AS(maximize_polarization(KernelSpec::riesz(1), Domain::circle(), 3, opts), std::invalid_argument);
    opts = {};
    opts.beta_start = 1e6;
    CHECK_THROWS_AS(maximize_polarization(KernelSpec::riesz(1), Domain::circle(), 3, opts), std::invalid_argument);
    opts = {};
    opts.mode = Mode::two_plate;
    CHECK_THROWS_AS(maximize_polarization(KernelSpec::riesz(1), Domain::circle(), 3, opts), std::invalid_argument);
    CHECK_THROWS_AS(maximize_polarization(KernelSpec::riesz(1), Domain::circle(), 0, SolveOptions{}), std::invalid_argument);
  }

  TEST_CASE("farthest-point subset spreads out") {
    const Configuration c = farthest_point_subset(Domain::circle().sample(64), 4);
    CHECK(max_gap_deviation(c) <= 1e-12);
  }

  TEST_CASE("stay-away distance shrinks like 1/N^2 on the circle") {
    // The optimal ring sits 1 - r_bar ~ 6/N^2 inside the circle at s = 2.
    for (int n : {8, 16, 32}) {
      SolveOptions opts;
      opts.restarts = 1;
      const SolveResult r = maximize_polarization(KernelSpec::riesz(2), Domain::circle(), n, opts);
      const double scaled = stay_away_distance(r.config, Domain::circle()) * n * n;
      CAPTURE(n);
      CHECK(scaled > 5.0);
      CHECK(scaled < 7.0);
    }
  }
}

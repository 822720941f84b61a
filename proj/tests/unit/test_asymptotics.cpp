#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polarmax/asymptotics.hpp"
#include "polarmax/closed_forms.hpp"
#include "polarmax/special_functions.hpp"

using namespace polarmax;

namespace {

constexpr double kPi = std::numbers::pi;

// Hexagonal Epstein zeta through the factorization 6 zeta(t) L_{-3}(t), t = s/2.
double hex_oracle(double s) {
  const double t = s / 2;
  const double l = std::pow(3.0, -t) * (hurwitz_zeta(t, 1.0 / 3) - hurwitz_zeta(t, 2.0 / 3));
  return 6 * riemann_zeta(t) * l;
}

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("zeta values") {
    CHECK(std::abs(riemann_zeta(2) - kPi * kPi / 6) <= 1e-12);
    CHECK(std::abs(riemann_zeta(4) - std::pow(kPi, 4) / 90) <= 1e-12);
    CHECK(std::abs(riemann_zeta(6) - std::pow(kPi, 6) / 945) <= 1e-12);
    CHECK(std::abs(riemann_zeta(3) - 1.2020569031595942) <= 1e-12);
    CHECK(std::abs(hurwitz_zeta(2, 0.5) - kPi * kPi / 2) <= 1e-12);
    CHECK(std::abs(hurwitz_zeta(2, 0.25) - (kPi * kPi + 8 * 0.915965594177219015)) <= 1e-11);
    CHECK(std::abs(riemann_zeta(1.5) - 2.6123753486854883) <= 1e-12);
    CHECK_THROWS_AS(riemann_zeta(1.0), std::domain_error);
    CHECK_THROWS_AS(hurwitz_zeta(2, 0), std::domain_error);
  }

  TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(unit_ball_volume(3) == doctest::Approx(4 * kPi / 3).epsilon(1e-15));
  }

  TEST_CASE("normalization tau") {
    CHECK(tau(2, 1, 10) == doctest::Approx(100.0));
    CHECK(tau(1, 1, 10) == doctest::Approx(10 * std::log(10.0)));
    CHECK(tau(0.5, 1, 10) == doctest::Approx(10.0));
    CHECK(tau(3, 2, 16) == doctest::Approx(64.0));
    CHECK_THROWS_AS(tau(2, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(tau(2, 0, 4), std::invalid_argument);
  }

  TEST_CASE("reference constants") {
    const auto line = sigma_reference(2, 1);
    REQUIRE(line);
    CHECK(line->value == doctest::Approx(kPi * kPi).epsilon(1e-13));
    CHECK(line->status == ReferenceStatus::exact);
    const auto boundary = sigma_reference(2, 2);
    REQUIRE(boundary);
    CHECK(boundary->value == doctest::Approx(kPi).epsilon(1e-14));
    const auto plane = sigma_reference(4, 2);
    REQUIRE(plane);
    CHECK(plane->status == ReferenceStatus::conjectured);
    CHECK(plane->value == doctest::Approx((9 - 1) * hex_oracle(4) / 2).epsilon(1e-6));
    CHECK_FALSE(sigma_reference(0.5, 1));
    CHECK_FALSE(sigma_reference(4, 3));
    CHECK(to_string(ReferenceStatus::conjectured) == "conjectured");
  }

  TEST_CASE("hexagonal lattice sum") {
    for (double s : {3.0, 4.0, 6.0}) {
      const LatticeSum sum = epstein_zeta_hex(s, 200);
      CAPTURE(s);
      CHECK(std::abs(sum.value - hex_oracle(s)) <= sum.tail_bound);
    }
    CHECK(epstein_zeta_hex(4, 200).tail_bound < 2e-6);
    CHECK(epstein_zeta_hex(6, 200).tail_bound < 1e-10);
    // Six nearest neighbours at distance 1 dominate for large s.
    CHECK(epstein_zeta_hex(40, 10).value == doctest::Approx(6.0).epsilon(1e-8));
    CHECK(epstein_zeta_hex(3, 50).value > epstein_zeta_hex(5, 50).value);
    CHECK_THROWS_AS(epstein_zeta_hex(2, 100), std::domain_error);
    CHECK_THROWS_AS(epstein_zeta_hex(4, 0.5), std::invalid_argument);
  }

  TEST_CASE("affine fit recovers a line") {
    const auto [a, b] = affine_fit({1, 2, 4}, {3, 5, 9});
    CHECK(a == doctest::Approx(1.0));
    CHECK(b == doctest::Approx(2.0));
  }

  TEST_CASE("short ratio run on the circle") {
    SolveOptions opts;
    opts.restarts = 1;
    const AsymptoticRun run = h_star_ratio_run(KernelSpec::riesz(2), Domain::circle(), 1, {4, 8, 16}, opts);
    REQUIRE(run.complete);
    REQUIRE(run.ratios.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      const int n = run.ns[i];
      CHECK(run.taus[i] == doctest::Approx(double(n) * n));
      CHECK(run.values[i] == doctest::Approx(circle_optimal_value(n, 2)).epsilon(1e-4));
      CHECK(run.ratios[i] == doctest::Approx(run.values[i] / run.taus[i]));
    }
    CHECK(run.ratios[0] > run.ratios[1]);
    CHECK(run.ratios[1] > run.ratios[2]);
    CHECK(run.intercept > 0.2);
    CHECK(run.intercept < 0.3);
  }

  TEST_CASE("interval ratios approach the line constant") {
    SolveOptions opts;
    opts.restarts = 2;
    const AsymptoticRun hyper = h_star_ratio_run(KernelSpec::riesz(2), Domain::interval(0, 1), 1, {16, 32, 64}, opts);
    REQUIRE(hyper.complete);
    // sigma_{2,1} = pi^2 over a set of unit length.
    CHECK(hyper.intercept == doctest::Approx(kPi * kPi).epsilon(2e-2));
    const AsymptoticRun boundary = h_star_ratio_run(KernelSpec::riesz(1), Domain::interval(0, 1), 1, {8, 16, 32, 64}, opts);
    REQUIRE(boundary.complete);
    // s = d: P / (N log N) creeps down toward the unit-ball volume 2.
    for (std::size_t i = 1; i < boundary.ratios.size(); ++i) {
      CHECK(boundary.ratios[i] < boundary.ratios[i - 1]);
      CHECK(boundary.ratios[i] > 2.0);
    }
  }
}

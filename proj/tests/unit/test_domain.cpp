#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "polarmax/domain.hpp"
#include "polarmax/io.hpp"

using namespace polarmax;

namespace {

constexpr double kPi = std::numbers::pi;

Point vec(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

PointSet triangle() {
  PointSet v(2, 3);
  v << 0, 1, 0, 0, 0, 1;
  return v;
}

// Brute-force nearest point of the triangle conv{(0,0),(1,0),(0,1)}: grid
// over barycentric weights, then the closest candidate.
Point triangle_oracle(const Point& x) {
  Point best = vec({0, 0});
  const int m = 400;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j) {
      const Point c = vec({double(i) / m, double(j) / m});
      if ((c - x).norm() < (best - x).norm()) best = c;
    }
  return best;
}

std::vector<Domain> shapes() {
  return {Domain::circle(), Domain::sphere(3, 2.0), Domain::ball(2, 0.5), Domain::cube(3, 2.0),
          Domain::interval(-1, 2), Domain::cloud(triangle())};
}

}  // namespace

TEST_SUITE("domain") {
  TEST_CASE("circle sample uses uniform angles starting at 0") {
    const PointSet s = Domain::circle().sample(4);
    REQUIRE(s.cols() == 4);
    for (int k = 0; k < 4; ++k) {
      CHECK(s(0, k) == doctest::Approx(std::cos(k * kPi / 2)));
      CHECK(s(1, k) == doctest::Approx(std::sin(k * kPi / 2)));
    }
  }

  TEST_CASE("interval sample is an endpoint-inclusive grid") {
    const PointSet s = Domain::interval(0, 1).sample(3);
    REQUIRE(s.cols() == 3);
    CHECK(s(0, 0) == 0.0);
    CHECK(s(0, 1) == doctest::Approx(0.5));
    CHECK(s(0, 2) == 1.0);
  }

  TEST_CASE("samples lie on their set and have the requested size") {
    const PointSet s = Domain::sphere(3).sample(500);
    REQUIRE(s.cols() == 500);
    for (Eigen::Index j = 0; j < s.cols(); ++j) CHECK(std::abs(s.col(j).norm() - 1.0) <= 1e-12);
    for (int p : {4, 5}) {
      const PointSet t = Domain::sphere(p).sample(300);
      CHECK(t.cols() == 300);
      CHECK((t.colwise().norm().array() - 1.0).abs().maxCoeff() <= 1e-12);
    }
    for (const Domain& d : {Domain::ball(3), Domain::cube(2), Domain::cube(3, 0.5)}) {
      const PointSet t = d.sample(257);
      CHECK(t.cols() == 257);
      for (Eigen::Index j = 0; j < t.cols(); ++j) CHECK(d.contains(t.col(j), 1e-12));
    }
    CHECK(Domain::cloud(triangle()).sample(1000).cols() == 3);
  }

  TEST_CASE("sampling is deterministic and rejects p > 5") {
    const Domain s3 = Domain::sphere(3);
    CHECK(s3.sample(200, 7) == s3.sample(200, 7));
    CHECK(s3.sample(200, 0) != s3.sample(200, 7));
    CHECK_THROWS_AS(Domain::sphere(6).sample(100), std::invalid_argument);
  }

  TEST_CASE("circle sample has arc mesh pi/n") {
    const int n = 37;
    const PointSet s = Domain::circle().sample(n, 3);
    double worst = 0.0;
    for (int k = 0; k < 10 * n; ++k) {
      const double t = 2 * kPi * k / (10 * n);
      const Point y = vec({std::cos(t), std::sin(t)});
      double best = 1e9;
      for (Eigen::Index j = 0; j < s.cols(); ++j) best = std::min(best, 2 * std::asin(0.5 * (s.col(j) - y).norm()));
      worst = std::max(worst, best);
    }
    CHECK(worst <= 2 * kPi / (2 * n) + 1e-12);
  }

  TEST_CASE("distances") {
    CHECK(Domain::circle().distance(vec({2, 0})) == doctest::Approx(1.0));
    CHECK(Domain::ball(2).distance(vec({0.5, 0})) == 0.0);
    CHECK(Domain::cube(2).distance(vec({2, 2})) == doctest::Approx(std::sqrt(2.0)));
    CHECK(Domain::cloud(triangle()).distance(vec({1, 1})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(Domain::circle().distance(vec({1, 0, 0})), std::invalid_argument);
  }

  TEST_CASE("hull projections") {
    const Domain c = Domain::circle();
    CHECK((c.project_hull(vec({3, 0})) - vec({1, 0})).norm() < 1e-15);
    CHECK((c.project_hull(vec({0.2, 0.1})) - vec({0.2, 0.1})).norm() < 1e-15);
    const Domain t = Domain::cloud(triangle());
    CHECK((t.project_hull(vec({1, 1})) - vec({0.5, 0.5})).norm() < 1e-10);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 3);
    for (int k = 0; k < 40; ++k) {
      const Point x = vec({u(rng), u(rng)});
      CHECK((t.project_hull(x) - triangle_oracle(x)).norm() < 4e-3);
    }
  }

  TEST_CASE("projection onto a higher-dimensional point cloud hull") {
    // Oracle: the unit cube's vertices span the cube, whose projection is a clamp.
    PointSet v(3, 8);
    for (int k = 0; k < 8; ++k)
      for (int i = 0; i < 3; ++i) v(i, k) = (k >> i) & 1;
    const Domain cloud = Domain::cloud(v), cube = Domain::cube(3);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2, 3);
    for (int k = 0; k < 50; ++k) {
      const Point x = vec({u(rng), u(rng), u(rng)});
      CHECK((cloud.project_hull(x) - cube.project_hull(x)).norm() < 1e-9);
    }
  }

  TEST_CASE("projection is idempotent and non-expansive") {
    std::mt19937_64 rng(1);
    for (const Domain& d : shapes()) {
      const int p = d.ambient_dim();
      std::normal_distribution<double> g(0, 2);
      double worst_expansion = 0.0, worst_idempotence = 0.0;
      for (int k = 0; k < 1000; ++k) {
        Point x(p), y(p);
        for (int i = 0; i < p; ++i) {
          x[i] = g(rng);
          y[i] = g(rng);
        }
        const Point px = d.project_hull(x), py = d.project_hull(y);
        worst_expansion = std::max(worst_expansion, (px - py).norm() - (x - y).norm());
        worst_idempotence = std::max(worst_idempotence, (d.project_hull(px) - px).norm());
      }
      CAPTURE(d.describe());
      CHECK(worst_expansion <= 1e-9);
      CHECK(worst_idempotence <= 1e-10);
    }
  }

  TEST_CASE("moving a point to the hull never lowers the potential on A") {
    const KernelSpec k = KernelSpec::riesz(1.5);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g(0, 1.5);
    for (const Domain& d : {Domain::circle(), Domain::cube(2), Domain::cloud(triangle())}) {
      const PointSet Y = d.sample(200);
      for (int t = 0; t < 20; ++t) {
        const Point x = vec({g(rng), g(rng)});
        const Point px = d.project_hull(x);
        for (Eigen::Index j = 0; j < Y.cols(); ++j) CHECK(k.eval(px, Y.col(j)) >= k.eval(x, Y.col(j)) - 1e-12);
      }
    }
  }

  TEST_CASE("project onto the set and random draws stay in place") {
    std::mt19937_64 rng(2);
    for (const Domain& d : shapes()) {
      for (int k = 0; k < 50; ++k) {
        CHECK(d.contains(d.random_on_set(rng), 1e-12));
        const Point h = d.random_in_hull(rng);
        CHECK((d.project_hull(h) - h).norm() <= 1e-10);
      }
    }
    CHECK((Domain::sphere(3).project(vec({0, 0, 3})) - vec({0, 0, 1})).norm() < 1e-15);
  }

  TEST_CASE("describe and parse round trip") {
    for (const char* text : {"circle", "circle:0.5", "sphere:3:2", "ball:2", "cube:3:0.5", "interval:0:1",
                             "sphere:2:1@0.5,-1"}) {
      const Domain d = Domain::parse(text);
      CHECK(Domain::parse(d.describe()).describe() == d.describe());
    }
    CHECK(Domain::parse("sphere:2:1@0.5,-1").center() == vec({0.5, -1}));
    CHECK_THROWS_AS(Domain::parse("torus:2"), std::invalid_argument);
    CHECK_THROWS_AS(Domain::parse("sphere:2@1"), std::invalid_argument);
  }

  TEST_CASE("simplex projection") {
    const Eigen::VectorXd w = project_onto_simplex(vec({0.5, 2.0, -1.0}));
    // Sorted threshold: only the largest entry survives, shifted by 1.
    CHECK((w - vec({0, 1, 0})).norm() < 1e-15);
    const Eigen::VectorXd keep = project_onto_simplex(vec({0.2, 0.3, 0.5}));
    CHECK((keep - vec({0.2, 0.3, 0.5})).norm() < 1e-15);
  }

  TEST_CASE("shape descriptors round-trip through JSON") {
    PointSet cloud(2, 3);
    cloud << 0, 1, 0,
             0, 0, 1;
    for (const Domain& d : {Domain::sphere(3, 2.0, vec({0, 0, 1})), Domain::circle(), Domain::ball(4, 0.5),
                            Domain::cube(2, 3.0, vec({-1, -1})), Domain::interval(-2, 5), Domain::cloud(cloud)}) {
      const Json j = to_json(d);
      const Domain back = domain_from_json(j);
      CHECK(back.describe() == d.describe());
      CHECK(to_json(back) == j);
    }
    const Json sphere = Json::parse(R"({"shape":"sphere","p":3,"radius":1.0,"center":[0,0,0]})");
    CHECK(domain_from_json(sphere).describe() == Domain::sphere(3).describe());
    CHECK(domain_from_json(Json::parse(R"({"shape":"circle"})")).is_circle());
    CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"shape":"torus"})")), std::invalid_argument);
    CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"shape":"ball","p":2,"radius":1,"colour":1})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(domain_from_json(Json::parse("[1,2]")), std::invalid_argument);
  }
}

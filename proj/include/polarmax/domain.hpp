#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>

#include "polarmax/kernel.hpp"

namespace polarmax {

struct Sphere {
  int p = 2;
  double radius = 1.0;
  Point center;
};

struct Ball {
  int p = 2;
  double radius = 1.0;
  Point center;
};

/// Axis-aligned cube [corner, corner + side]^p.
struct Cube {
  int p = 2;
  double side = 1.0;
  Point corner;
};

struct Interval {
  double a = 0.0;
  double b = 1.0;
};

struct PointCloud {
  PointSet points;
};

/// A compact set A in R^p. Immutable once built.
class Domain {
 public:
  using Shape = std::variant<Sphere, Ball, Cube, Interval, PointCloud>;

  explicit Domain(Shape shape);

  static Domain sphere(int p, double radius = 1.0, Point center = {});
  /// The circle is the p = 2 sphere.
  static Domain circle(double radius = 1.0, Point center = {});
  static Domain ball(int p, double radius = 1.0, Point center = {});
  static Domain cube(int p, double side = 1.0, Point corner = {});
  static Domain interval(double a, double b);
  static Domain cloud(PointSet points);

  /// Parses "circle", "circle:0.5", "sphere:3", "sphere:3:2.0", "ball:3",
  /// "cube:2", "cube:2:0.5", "interval:0:1"; a suffix "@x,y,..." moves the
  /// center (cube: corner). describe() produces the same syntax.
  static Domain parse(std::string_view text);
  std::string describe() const;

  const Shape& shape() const { return shape_; }
  int ambient_dim() const { return dim_; }
  bool is_sphere() const { return std::holds_alternative<Sphere>(shape_); }
  bool is_circle() const;
  bool is_discrete() const { return std::holds_alternative<PointCloud>(shape_); }
  /// Center/radius for spheres and balls; throws otherwise.
  const Point& center() const;
  double radius() const;

  /// Deterministic quasi-uniform sample with `resolution` points
  /// (point clouds are returned as-is). Identical inputs give identical
  /// output. Spheres with p > 5 are rejected.
  PointSet sample(int resolution, std::uint64_t seed = 0) const;

  /// Typical spacing of sample(resolution).
  double mesh(int resolution) const;
  double diameter() const;

  double distance(const Point& x) const;
  bool contains(const Point& x, double tol = 1e-12) const { return distance(x) <= tol; }

  /// Nearest point of conv(A).
  Point project_hull(const Point& x) const;
  /// Nearest point of A itself (any nearest point when not unique).
  Point project(const Point& x) const;

  Point random_in_hull(std::mt19937_64& rng) const;
  Point random_on_set(std::mt19937_64& rng) const;

 private:
  void check_dim(const Point& x) const;

  Shape shape_;
  int dim_ = 0;
};

/// Nearest point of the convex hull of the columns of `vertices`, computed by
/// accelerated projected gradient on the convex-combination weights followed
/// by an exact solve on the detected active face.
Point project_onto_hull(const PointSet& vertices, const Point& x, int iterations = 200,
                        double tol = 1e-10);

/// Euclidean projection of v onto the probability simplex.
Eigen::VectorXd project_onto_simplex(const Eigen::VectorXd& v);

}  // namespace polarmax

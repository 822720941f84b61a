#pragma once

#include <vector>

#include "polarmax/kernel.hpp"

namespace polarmax {

/// A multiset of N >= 1 points in R^p (repetitions allowed), stored
/// column-wise.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(PointSet points);

  static Configuration repeated(const Point& x, int n);
  static Configuration from_points(const std::vector<Point>& pts);

  int size() const { return static_cast<int>(points_.cols()); }
  int dim() const { return static_cast<int>(points_.rows()); }
  Point point(int i) const { return points_.col(i); }
  const PointSet& points() const { return points_; }
  PointSet& mutable_points() { return points_; }

  Configuration with_point(const Point& x) const;
  Point centroid() const { return points_.rowwise().mean(); }

 private:
  PointSet points_;
};

/// N points at angles phase + 2*pi*k/N on the circle of the given radius.
Configuration regular_polygon(int n, double radius, double phase = 0.0, const Point& center = {});

/// Angles of planar points about `center`, rotated so the first point sits at
/// angle 0, reduced to [0, 2pi) and sorted. Makes "equal up to rotation"
/// an ordinary comparison.
std::vector<double> canonical_angles(const Configuration& config, const Point& center = {});

/// Consecutive angular gaps (summing to 2pi) of the canonicalized angles.
std::vector<double> angular_gaps(const Configuration& config, const Point& center = {});

/// Largest |gap - 2pi/N| over the angular gaps.
double max_gap_deviation(const Configuration& config, const Point& center = {});

}  // namespace polarmax

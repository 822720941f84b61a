#include "polarmax/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polarmax {

Configuration::Configuration(PointSet points) : points_(std::move(points)) {
  if (points_.cols() < 1 || points_.rows() < 1)
    throw std::invalid_argument("configuration: need at least one point");
  if (!points_.allFinite()) throw std::invalid_argument("configuration: non-finite coordinates");
}

Configuration Configuration::repeated(const Point& x, int n) {
  if (n < 1) throw std::invalid_argument("configuration: N must be >= 1");
  PointSet pts(x.size(), n);
  pts.colwise() = x;
  return Configuration(std::move(pts));
}

Configuration Configuration::from_points(const std::vector<Point>& pts) {
  if (pts.empty()) throw std::invalid_argument("configuration: need at least one point");
  PointSet m(pts.front().size(), static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].size() != m.rows()) throw std::invalid_argument("configuration: mixed dimensions");
    m.col(static_cast<Eigen::Index>(i)) = pts[i];
  }
  return Configuration(std::move(m));
}

Configuration Configuration::with_point(const Point& x) const {
  if (x.size() != dim()) throw std::invalid_argument("configuration: dimension mismatch");
  PointSet m(dim(), size() + 1);
  m.leftCols(size()) = points_;
  m.col(size()) = x;
  return Configuration(std::move(m));
}

Configuration regular_polygon(int n, double radius, double phase, const Point& center) {
  if (n < 1) throw std::invalid_argument("regular_polygon: N must be >= 1");
  const Point c = center.size() == 0 ? Point::Zero(2) : center;
  PointSet m(2, n);
  for (int k = 0; k < n; ++k) {
    const double a = phase + 2.0 * std::numbers::pi * k / n;
    m(0, k) = c[0] + radius * std::cos(a);
    m(1, k) = c[1] + radius * std::sin(a);
  }
  return Configuration(std::move(m));
}

std::vector<double> canonical_angles(const Configuration& config, const Point& center) {
  if (config.dim() != 2) throw std::invalid_argument("canonical_angles: planar configuration required");
  const Point c = center.size() == 0 ? Point::Zero(2) : center;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> angles(config.size());
  for (int i = 0; i < config.size(); ++i) {
    const Point d = config.point(i) - c;
    angles[i] = std::atan2(d[1], d[0]);
  }
  const double first = angles.front();
  for (auto& a : angles) {
    a = std::fmod(a - first, two_pi);
    if (a < 0) a += two_pi;
    if (a >= two_pi) a -= two_pi;
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

std::vector<double> angular_gaps(const Configuration& config, const Point& center) {
  const auto angles = canonical_angles(config, center);
  std::vector<double> gaps(angles.size());
  for (std::size_t i = 0; i + 1 < angles.size(); ++i) gaps[i] = angles[i + 1] - angles[i];
  gaps.back() = 2.0 * std::numbers::pi - angles.back() + angles.front();
  return gaps;
}

double max_gap_deviation(const Configuration& config, const Point& center) {
  const double target = 2.0 * std::numbers::pi / config.size();
  double worst = 0.0;
  for (double g : angular_gaps(config, center)) worst = std::max(worst, std::abs(g - target));
  return worst;
}

}  // namespace polarmax

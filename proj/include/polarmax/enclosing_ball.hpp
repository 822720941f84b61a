#pragma once

#include "polarmax/kernel.hpp"

namespace polarmax {

struct EnclosingBall {
  Point center;
  double radius = 0.0;
};

/// Smallest ball containing the columns of `points` (move-to-front Welzl).
/// The returned radius is the exact maximum distance from the returned center,
/// so the ball always contains every point.
EnclosingBall minimal_enclosing_ball(const PointSet& points);

}  // namespace polarmax

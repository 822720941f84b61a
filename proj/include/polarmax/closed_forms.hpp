#pragma once

#include "polarmax/configuration.hpp"
#include "polarmax/domain.hpp"

namespace polarmax {

/// Riesz s-potential at the worst point of the unit circle for the regular
/// N-gon inscribed in the circle of radius r (vertices at angles 2 pi k / N):
///   sum_j (r^2 + 1 - 2 r cos((2j+1) pi / N))^(-s/2).
/// The minimum over the unit circle sits at the arc midpoints for every r.
double ngon_midpoint_potential(int n, double s, double r);
/// d/dr of ngon_midpoint_potential.
double ngon_midpoint_potential_derivative(int n, double s, double r);

/// Radius in [0, 1] maximizing ngon_midpoint_potential: grid bracket, golden
/// section to 1e-12, then bisection on the derivative.
double circle_optimal_radius(int n, double s);
/// ngon_midpoint_potential at circle_optimal_radius.
double circle_optimal_value(int n, double s);

/// x_{r,s}: the root in (0, 1] of g(r, s, x) = 0 in x.
double concentric_x(double r, double s);
/// g(r, s, x) = 2 (1 + r^2) x + r (-4 + 2 s (x^2 - 1)).
double concentric_g(double r, double s, double x);
/// R_{N,s} >= 1; the band [1/R, R] of radii r for which the N-gon on the
/// circle of radius r is the two-plate optimum against the unit circle.
double concentric_R(int n, double s);

struct CircleThresholds {
  int n = 0;
  double s = 0.0;
  double r_bar = 0.0;
  double R = 0.0;

  double x_of_r(double r) const { return concentric_x(r, s); }
  /// cos(pi/N) <= x_{r,s}.
  bool convex_condition(double r) const;
  /// 1/R <= r <= R.
  bool band_condition(double r) const { return r >= 1.0 / R && r <= R; }
};

CircleThresholds concentric_thresholds(int n, double s);

/// p+1 vertices of a regular simplex inscribed in the sphere of the given
/// radius about `center` (pairwise equidistant, centroid = center).
Configuration simplex_configuration(int p, double radius = 1.0, const Point& center = {});

/// min_i distance from x_i to the sphere A.
double stay_away_distance(const Configuration& config, const Domain& sphere);

}  // namespace polarmax

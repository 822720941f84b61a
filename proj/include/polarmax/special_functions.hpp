#pragma once

namespace polarmax {

/// Hurwitz zeta sum_{n>=0} (n + a)^-s for s > 1, a > 0, by Euler-Maclaurin
/// summation (absolute error well below 1e-12 for moderate s).
double hurwitz_zeta(double s, double a);

/// Riemann zeta for s > 1.
double riemann_zeta(double s);

/// Volume of the unit ball in R^d: pi^(d/2) / Gamma(d/2 + 1).
double unit_ball_volume(double d);

}  // namespace polarmax

#pragma once

#include <limits>

#include "polarmax/configuration.hpp"
#include "polarmax/domain.hpp"
#include "polarmax/polarization.hpp"
#include "polarmax/solver.hpp"

namespace polarmax {

struct CoverReport {
  /// Covering radius of `config` relative to A.
  double eta = 0.0;
  Configuration config;
  Mode mode = Mode::unconstrained;
  /// Covering radius reached by the large-s Riesz polarization solver, when
  /// the cross-check ran (NaN otherwise).
  double cross_check_eta = std::numeric_limits<double>::quiet_NaN();
};

/// Best unconstrained N-point covering of the unit circle: the origin
/// (eta = 1) for N <= 2, else the side midpoints of the regular N-gon
/// (radius cos(pi/N), eta = sin(pi/N)).
CoverReport circle_unconstrained_cover(int n);

struct TransferResult {
  /// Radius the constrained configuration is scaled to.
  double r = 0.0;
  /// Covering radius of the scaled configuration.
  double eta_star = 0.0;
  Configuration config;
};

/// Turns a constrained covering of the unit sphere with radius eta into an
/// unconstrained one: finds rho in (0, min(eta, 1)) with
/// eta^2 = (1 - sqrt(1 - rho^2))^2 + rho^2 by bisection, scales the points by
/// r = sqrt(1 - rho^2) and reports eta* = rho.
TransferResult sphere_transfer(double eta, const Configuration& on_sphere);

struct CoverOptions {
  int restarts = 4;
  int iterations = 2000;
  int stages = 20;
  double beta_start = 10.0;
  double beta_end = 1e5;
  std::uint64_t seed = 0;
  Mode mode = Mode::unconstrained;
  int resolution = 0;
  int threads = 0;
  /// Also run the s = 64 Riesz polarization solver and report its covering
  /// radius as cross_check_eta.
  bool cross_check = false;
};

/// Minimizes the covering radius of N points relative to A: descent on a
/// softmax of the sampled nearest-point distances, warm-started from the
/// closed forms where they exist.
CoverReport minimize_covering(const Domain& A, int n, const CoverOptions& opts = {});

}  // namespace polarmax

#pragma once

#include <string>
#include <vector>

#include "polarmax/configuration.hpp"
#include "polarmax/domain.hpp"
#include "polarmax/kernel.hpp"

namespace polarmax {

enum class Mode { unconstrained, constrained, two_plate };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct PolarizationReport {
  /// min over A of sum_i K(x_i, y); +inf when the minimum is singular.
  double value = 0.0;
  Point witness;
  int resolution = 0;
  KernelSpec kernel;
  Mode mode = Mode::unconstrained;
  bool singular = false;
};

/// Hard-min polarization over a deterministic sample of A, followed by a
/// short local descent (25 steps) of the potential from the discrete argmin
/// and from a few other low, well-separated samples; the lowest result wins.
PolarizationReport polarization_value(const KernelSpec& kernel, const Domain& A,
                                      const Configuration& config, int resolution,
                                      Mode mode = Mode::unconstrained);

/// Potential y -> sum_i K(x_i, y) along the sample of A, for plotting.
struct ProfileSample {
  Point y;
  double potential;
};
std::vector<ProfileSample> potential_profile(const KernelSpec& kernel, const Domain& A,
                                             const Configuration& config, int resolution);

/// Covering radius of `config` relative to A: max over the (polished) sample
/// of the distance to the nearest configuration point.
double covering_radius(const Configuration& config, const Domain& A, int resolution);

struct CoveringCertificate {
  /// Radius of the balls covering the sample.
  double radius = 0.0;
  /// (2 r)^-s.
  double bound = 0.0;
  /// Ball centers moved onto A.
  Configuration centers;
  /// Polarization of the touched centers on A (at the same resolution).
  double achieved = 0.0;
};

/// Lower bound for the unconstrained Riesz polarization from an N-ball
/// covering of the sample of A: farthest-point traversal from sample index 0,
/// nearest-center clusters, one minimal enclosing ball per cluster.
CoveringCertificate covering_lower_bound(const KernelSpec& kernel, const Domain& A, int n,
                                         int resolution);

}  // namespace polarmax

#pragma once

#include "polarmax/configuration.hpp"
#include "polarmax/domain.hpp"
#include "polarmax/kernel.hpp"

namespace polarmax {

struct ReplacementResult {
  /// Chosen sample points, one per column.
  PointSet replacements;
  /// Samples y with |x - y| < min_j |x_j - y| (should be zero).
  int dominance_violations = 0;
  /// Ceiling on the number of replacements for the ambient dimension.
  int cap_bound = 0;

  int size() const { return static_cast<int>(replacements.cols()); }
};

/// Replaces an outside point x by a few points of the sample that dominate it
/// for every decreasing radial kernel: f(|x - y|) <= max_j f(|x_j - y|) on
/// the whole sample. Samples are visited by increasing distance to x; one is
/// kept when its direction from x is at least pi/6 away from every kept
/// direction. Dominance is verified afterwards with f(r) = r^-2.
ReplacementResult replacement_points(const PointSet& samples, const Point& x);

/// Number of configuration points farther than eps from A.
int non_concentration_census(const Configuration& config, const Domain& A, double eps);

/// Replaces a cluster of p+1 points by a regular simplex of radius c2 * r
/// about the cluster centroid, r = dist(centroid, A), and returns
/// P(A, new) - P(A, old) for the Riesz kernel. `rest` holds the other points
/// (may have zero columns).
double simplex_perturbation_gain(const PointSet& cluster, const PointSet& rest, const KernelSpec& kernel,
                                 const Domain& A, double c2, int resolution = 0);

}  // namespace polarmax

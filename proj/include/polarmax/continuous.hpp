#pragma once

#include "polarmax/configuration.hpp"
#include "polarmax/domain.hpp"
#include "polarmax/kernel.hpp"

namespace polarmax {

/// Finitely supported probability measure: support points (columns) and
/// non-negative weights summing to one.
struct DiscreteMeasure {
  PointSet support;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(weights.size()); }
  /// Throws std::invalid_argument unless weights >= 0 and sum to 1 (1e-12).
  void validate() const;
};

/// Uniform weights 1/N on the points of `config`; coincident points are
/// merged by adding their weights.
DiscreteMeasure counting_measure(const Configuration& config);

struct ChebyshevOptions {
  int res_a = 400;
  int res_b = 400;
  int iterations = 20000;
  /// Absolute duality-gap target; <= 0 means 1e-4 times the payoff scale.
  double tolerance = 0.0;
  int threads = 0;
};

struct ChebyshevResult {
  /// Guaranteed value of the returned measure: min over the A-sample of its
  /// potential.
  double value = 0.0;
  DiscreteMeasure measure;
  /// Upper bound from the opponent's mixed strategy minus `value`; >= 0.
  double duality_gap = 0.0;
  double tolerance = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Value of the matrix game max over measures mu on the B-sample of
/// min over the A-sample of sum_j K(x, y_j) mu_j, by optimistic
/// multiplicative weights for both players with averaged strategies. When
/// A and B overlap and the kernel is singular on the diagonal, the B-sample
/// is shifted by half a mesh so no atom sits on an A-sample point.
ChebyshevResult chebyshev_constant(const KernelSpec& kernel, const Domain& A, const Domain& B,
                                   const ChebyshevOptions& opts = {});

/// Average of <x, e>^k over the unit sphere S^{p-1} for even k:
/// Gamma(p/2) Gamma((k+1)/2) / (sqrt(pi) Gamma((p+k)/2)).
double sphere_moment_constant(int p, int k);

}  // namespace polarmax

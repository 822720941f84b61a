#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarmax/configuration.hpp"
#include "polarmax/domain.hpp"
#include "polarmax/kernel.hpp"
#include "polarmax/polarization.hpp"

namespace polarmax {

struct SolveOptions {
  int restarts = 4;
  /// Ascent iterations per restart, split evenly over the stages.
  int iterations = 2000;
  int stages = 20;
  /// Softmin inverse temperature, annealed geometrically. It is measured
  /// relative to the current objective scale, so it is unit-free.
  double beta_start = 10.0;
  double beta_end = 1e5;
  /// A stage ends early when the surrogate changes by less than this
  /// (relative).
  double tolerance = 1e-12;
  std::uint64_t seed = 0;
  Mode mode = Mode::unconstrained;
  /// Second plate B, required when mode == two_plate.
  std::optional<Domain> plate;
  /// Sample size for the inner minimum over A; 0 picks one from N and A.
  int resolution = 0;
  /// Worker threads for restarts; 0 uses default_thread_count().
  int threads = 0;
  bool warm_start = true;

  /// Throws std::invalid_argument when the options are inconsistent.
  void validate() const;
};

struct SolveResult {
  Configuration config;
  PolarizationReport report;
  int best_restart = 0;
  /// Polished hard-min value reached by every restart (restart 0 is the warm
  /// start when enabled).
  std::vector<double> restart_values;
  /// Hard-min value of the best warm-start candidate (NaN without one).
  double warm_start_value = 0.0;
  bool success = true;
  std::string message;
};

/// Sample size used when SolveOptions::resolution is 0.
int default_resolution(const Domain& A, int n);

/// Maximizes min_{y in A} sum_i K(x_i, y) over N-point configurations that
/// live in conv(A) (unconstrained), in A (constrained) or in the plate B
/// (two-plate). Ascent on a softmin surrogate with projection after every
/// step; the best restart is chosen by hard-min value with restart-index
/// tie-break, so the answer does not depend on the thread count.
SolveResult maximize_polarization(const KernelSpec& kernel, const Domain& A, int n,
                                  const SolveOptions& opts);

/// Known good starting configurations for (A, N, mode); may be empty.
std::vector<Configuration> warm_starts(const KernelSpec& kernel, const Domain& A, int n,
                                       const SolveOptions& opts);

/// N points of `samples` chosen by farthest-point traversal from index 0.
Configuration farthest_point_subset(const PointSet& samples, int n);

}  // namespace polarmax

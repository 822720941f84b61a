#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polarmax/domain.hpp"
#include "polarmax/kernel.hpp"
#include "polarmax/solver.hpp"

namespace polarmax {

/// N^(s/d) for s > d, N log N for s == d (exact match), N for s < d.
double tau(double s, double d, int n);

enum class ReferenceStatus { exact, conjectured };
std::string to_string(ReferenceStatus status);

struct SigmaReference {
  double value = 0.0;
  ReferenceStatus status = ReferenceStatus::exact;
};

/// Known value of the leading constant sigma_{s,d}:
///   s == d          -> unit-ball volume (exact),
///   d == 1, s > 1   -> 2 zeta(s) (2^s - 1) (exact),
///   d == 2, s > 2   -> (3^(s/2) - 1) zeta_hex(s) / 2 (conjectured).
/// Empty otherwise.
std::optional<SigmaReference> sigma_reference(double s, int d);

struct LatticeSum {
  double value = 0.0;
  /// Rigorous bound on |value - exact|.
  double tail_bound = 0.0;
};

/// Epstein zeta of the hexagonal lattice with unit minimal distance,
/// sum over nonzero (n, m) of ((n + m/2)^2 + 3 m^2 / 4)^(-s/2). Vectors with
/// norm <= cutoff are summed directly; the rest is replaced by its
/// area-density integral, with an error bound from the lattice-point count
/// discrepancy.
LatticeSum epstein_zeta_hex(double s, double cutoff);

struct AsymptoticRun {
  double s = 0.0;
  double d = 0.0;
  std::vector<int> ns;
  std::vector<double> values;
  std::vector<double> taus;
  std::vector<double> ratios;
  /// Least-squares line ratio ~ intercept + slope / N over the last three
  /// ratios (all of them when fewer).
  double slope = 0.0;
  double intercept = 0.0;
  bool complete = true;
  std::string error;
};

/// Solves at every N and records P / tau_{s,d}(N). A solver failure stops the
/// run; results for smaller N are kept.
AsymptoticRun h_star_ratio_run(const KernelSpec& kernel, const Domain& A, double d,
                               const std::vector<int>& ns, const SolveOptions& opts);

/// Affine fit y ~ intercept + slope * x.
std::pair<double, double> affine_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace polarmax

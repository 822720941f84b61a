#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Core>

namespace polarmax {

using Point = Eigen::VectorXd;
/// A list of points stored column-wise: column j is the j-th point.
using PointSet = Eigen::MatrixXd;

/// Value returned for singular evaluations (coincident points with a
/// kernel that blows up on the diagonal). It saturates: min/softmin treat it
/// as larger than every finite value.
inline constexpr double kSingular = std::numeric_limits<double>::infinity();

/// Riesz s-kernel: |x-y|^-s for s>0, -log|x-y| for s=0, -|x-y|^-s for s<0.
struct Riesz {
  double s = 1.0;
};

/// <x,y>^k for an even non-negative integer k.
struct InnerPower {
  int k = 2;
};

/// K(x,y) = f(angle(x,y)) for x, y on the unit circle. The default family is
/// f(t) = (R^2 + 1 - 2 R cos t)^(-s/2), i.e. the Riesz kernel between a point
/// on the unit circle and one on the circle of radius R, seen as a function
/// of the angle between them.
struct GeodesicRadial {
  std::string name;
  double R = 1.0;
  double s = 1.0;
  std::function<double(double)> profile;
  std::function<double(double)> derivative;

  static GeodesicRadial chord_power(double R, double s);
};

class KernelSpec {
 public:
  using Variant = std::variant<Riesz, InnerPower, GeodesicRadial>;

  KernelSpec() : kind_(Riesz{}) {}
  explicit KernelSpec(Variant v);

  static KernelSpec riesz(double s) { return KernelSpec(Riesz{s}); }
  static KernelSpec inner_power(int k) { return KernelSpec(InnerPower{k}); }
  static KernelSpec geodesic(GeodesicRadial g) { return KernelSpec(std::move(g)); }

  /// Parses "riesz:2", "log", "innerpower:2", "geodesic:R:s".
  /// Throws std::invalid_argument on malformed input.
  static KernelSpec parse(std::string_view text);
  std::string describe() const;

  const Variant& kind() const { return kind_; }
  bool is_riesz() const { return std::holds_alternative<Riesz>(kind_); }
  /// Exponent of a Riesz kernel; throws if the kernel is not Riesz.
  double riesz_s() const;
  /// True when K(x,y) = f(|x-y|) with f strictly decreasing.
  bool is_decreasing_radial() const { return is_riesz(); }
  /// True when K(x,x) = +inf (Riesz with s >= 0).
  bool singular_on_diagonal() const;

  double eval(const Point& x, const Point& y) const;
  /// Gradient of K(., y) at x.
  Point gradient(const Point& x, const Point& y) const;

  /// Riesz profile as a function of the squared distance. Only valid for
  /// Riesz kernels.
  double riesz_from_sq(double d2) const;

 private:
  Variant kind_;
};

/// F_j = sum_i K(x_i, y_j) for every column y_j of Y.
void potential_sums(const KernelSpec& kernel, const PointSet& X, const PointSet& Y,
                    Eigen::Ref<Eigen::VectorXd> F);

/// G_i = sum_j w_j grad_x K(x_i, y_j). Columns of Y with w_j == 0 are skipped
/// so saturated samples never contribute.
void weighted_gradient(const KernelSpec& kernel, const PointSet& X, const PointSet& Y,
                       const Eigen::VectorXd& w, PointSet& G);

}  // namespace polarmax

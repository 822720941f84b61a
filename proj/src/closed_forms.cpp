#include "polarmax/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace polarmax {

namespace {

constexpr double kPi = std::numbers::pi;

void check_ngon(int n, double s) {
  if (n < 2) throw std::invalid_argument("N must be >= 2");
  if (!(s > 0) || !std::isfinite(s)) throw std::invalid_argument("s must be positive");
}

}  // namespace

double ngon_midpoint_potential(int n, double s, double r) {
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double q = r * r + 1.0 - 2.0 * r * std::cos((2.0 * j + 1.0) * kPi / n);
    acc += std::pow(q, -0.5 * s);
  }
  return acc;
}

double ngon_midpoint_potential_derivative(int n, double s, double r) {
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double c = std::cos((2.0 * j + 1.0) * kPi / n);
    const double q = r * r + 1.0 - 2.0 * r * c;
    acc += -0.5 * s * std::pow(q, -0.5 * s - 1.0) * (2.0 * r - 2.0 * c);
  }
  return acc;
}

double circle_optimal_radius(int n, double s) {
  check_ngon(n, s);
  auto f = [&](double r) { return ngon_midpoint_potential(n, s, r); };

  constexpr int kGrid = 2000;
  int best = 0;
  double best_value = f(0.0);
  for (int k = 1; k <= kGrid; ++k) {
    // The potential is finite at r = 1 (the midpoints avoid the vertices).
    const double v = f(static_cast<double>(k) / kGrid);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  double lo = std::max(0, best - 1) / static_cast<double>(kGrid);
  double hi = std::min(kGrid, best + 1) / static_cast<double>(kGrid);

  // The maximum is flat, so golden-section search stalls near sqrt(eps);
  // bisect the first-order condition instead when the grid brackets it.
  auto df = [&](double x) { return ngon_midpoint_potential_derivative(n, s, x); };
  if (!(df(lo) > 0 && df(hi) < 0)) return best / static_cast<double>(kGrid);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (df(mid) > 0 ? lo : hi) = mid;
  }
  return std::abs(df(lo)) < std::abs(df(hi)) ? lo : hi;
}

double circle_optimal_value(int n, double s) { return ngon_midpoint_potential(n, s, circle_optimal_radius(n, s)); }

double concentric_x(double r, double s) {
  if (!(r > 0) || !(s > 0)) throw std::invalid_argument("concentric_x: need r > 0 and s > 0");
  const double a = 1.0 + r * r;
  return (-a + std::sqrt(a * a + 4.0 * r * r * s * (2.0 + s))) / (2.0 * r * s);
}

double concentric_g(double r, double s, double x) {
  return 2.0 * (1.0 + r * r) * x + r * (-4.0 + 2.0 * s * (x * x - 1.0));
}

double concentric_R(int n, double s) {
  check_ngon(n, s);
  if (n == 2) return std::numeric_limits<double>::infinity();
  const double t = kPi / n;
  const double sin2 = std::sin(t) * std::sin(t);
  const double cos2 = std::cos(t) * std::cos(t);
  return 0.5 / std::cos(t) *
         (s * sin2 + 2.0 + std::sqrt(sin2 * ((s + 2.0) * (s + 2.0) - s * s * cos2)));
}

bool CircleThresholds::convex_condition(double r) const { return std::cos(kPi / n) <= x_of_r(r); }

CircleThresholds concentric_thresholds(int n, double s) {
  check_ngon(n, s);
  CircleThresholds t;
  t.n = n;
  t.s = s;
  t.r_bar = circle_optimal_radius(n, s);
  t.R = concentric_R(n, s);
  return t;
}

Configuration simplex_configuration(int p, double radius, const Point& center) {
  if (p < 1) throw std::invalid_argument("simplex_configuration: p must be >= 1");
  if (!(radius >= 0)) throw std::invalid_argument("simplex_configuration: radius must be >= 0");
  const Point c = center.size() == 0 ? Point::Zero(p) : center;
  if (c.size() != p) throw std::invalid_argument("simplex_configuration: center dimension mismatch");
  // Helmert basis of the sum-zero hyperplane of R^(p+1).
  PointSet out(p, p + 1);
  for (int i = 0; i <= p; ++i) {
    for (int k = 1; k <= p; ++k) {
      const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
      double coord = 0.0;
      if (i < k) coord = 1.0 / norm;
      else if (i == k) coord = -static_cast<double>(k) / norm;
      out(k - 1, i) = coord;
    }
  }
  // Each column is e_i minus the centroid expressed in that basis; its norm
  // is sqrt(p/(p+1)).
  const double scale = radius / std::sqrt(static_cast<double>(p) / (p + 1));
  out *= scale;
  out.colwise() += c;
  return Configuration(std::move(out));
}

double stay_away_distance(const Configuration& config, const Domain& sphere) {
  if (!sphere.is_sphere()) throw std::invalid_argument("stay_away_distance: A must be a sphere");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < config.size(); ++i) best = std::min(best, sphere.distance(config.point(i)));
  return best;
}

}  // namespace polarmax

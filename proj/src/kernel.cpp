#include "polarmax/kernel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace polarmax {

namespace {

constexpr double kCircleTol = 1e-9;

void check_dims(const Point& x, const Point& y) {
  if (x.size() != y.size() || x.size() == 0)
    throw std::invalid_argument("kernel: dimension mismatch (" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()) + ")");
}

double parse_number(std::string_view s) {
  std::string tmp(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tmp, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("kernel: bad number '" + tmp + "'");
  }
  if (used != tmp.size() || !std::isfinite(v))
    throw std::invalid_argument("kernel: bad number '" + tmp + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Fast Riesz profile on the squared distance.
struct RieszProfile {
  double s;
  int even_half = -1;  // s/2 when s is a small positive even integer

  explicit RieszProfile(double s_) : s(s_) {
    if (s > 0 && s <= 16 && std::floor(s / 2) * 2 == s) even_half = static_cast<int>(s / 2);
  }

  // Returns K and writes dK/dx = factor * (x - y).
  double value(double d2) const {
    if (d2 <= 0.0) return s >= 0 ? kSingular : 0.0;
    if (even_half > 0) {
      double p = d2;
      for (int i = 1; i < even_half; ++i) p *= d2;
      return 1.0 / p;
    }
    if (s == 1.0) return 1.0 / std::sqrt(d2);
    if (s == 0.0) return -0.5 * std::log(d2);
    if (s > 0) return std::pow(d2, -0.5 * s);
    return -std::pow(d2, -0.5 * s);
  }

  double grad_factor(double d2, double v) const {
    if (s == 0.0) return -1.0 / d2;
    return -s * v / d2;
  }
};

double circle_angle(const Point& x, const Point& y) {
  const double cross = x[0] * y[1] - x[1] * y[0];
  const double dot = x[0] * y[0] + x[1] * y[1];
  return std::atan2(std::abs(cross), dot);
}

void check_on_circle(const Point& x) {
  if (x.size() != 2 || std::abs(x.norm() - 1.0) > kCircleTol)
    throw std::invalid_argument("kernel: geodesic kernel needs points on the unit circle");
}

}  // namespace

GeodesicRadial GeodesicRadial::chord_power(double R, double s) {
  if (!(R > 0) || !(s > 0)) throw std::invalid_argument("geodesic kernel: need R>0, s>0");
  GeodesicRadial g;
  g.name = "chord_power";
  g.R = R;
  g.s = s;
  g.profile = [R, s](double t) { return std::pow(R * R + 1.0 - 2.0 * R * std::cos(t), -0.5 * s); };
  g.derivative = [R, s](double t) {
    const double q = R * R + 1.0 - 2.0 * R * std::cos(t);
    return -s * R * std::sin(t) * std::pow(q, -0.5 * s - 1.0);
  };
  return g;
}

KernelSpec::KernelSpec(Variant v) : kind_(std::move(v)) {
  if (auto* r = std::get_if<Riesz>(&kind_); r && !std::isfinite(r->s))
    throw std::invalid_argument("riesz exponent must be finite");
  if (auto* ip = std::get_if<InnerPower>(&kind_); ip && (ip->k < 0 || ip->k % 2 != 0))
    throw std::invalid_argument("innerpower exponent must be an even non-negative integer");
  if (auto* g = std::get_if<GeodesicRadial>(&kind_); g && (!g->profile || !g->derivative))
    throw std::invalid_argument("geodesic kernel needs a profile and its derivative");
}

KernelSpec KernelSpec::parse(std::string_view text) {
  auto parts = split(text, ':');
  const auto head = parts[0];
  if (head == "log" && parts.size() == 1) return riesz(0.0);
  if (head == "riesz" && parts.size() == 2) return riesz(parse_number(parts[1]));
  if (head == "innerpower" && parts.size() == 2) {
    const double k = parse_number(parts[1]);
    if (k != std::floor(k) || k < 0 || k > 1000)
      throw std::invalid_argument("kernel: innerpower exponent must be an even integer");
    return inner_power(static_cast<int>(k));
  }
  if (head == "geodesic" && parts.size() == 3)
    return geodesic(GeodesicRadial::chord_power(parse_number(parts[1]), parse_number(parts[2])));
  throw std::invalid_argument("kernel: cannot parse '" + std::string(text) +
                              "' (expected riesz:<s>, log, innerpower:<k> or geodesic:<R>:<s>)");
}

std::string KernelSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Riesz>) os << "riesz:" << k.s;
        else if constexpr (std::is_same_v<T, InnerPower>) os << "innerpower:" << k.k;
        else os << "geodesic:" << k.R << ":" << k.s;
      },
      kind_);
  return os.str();
}

double KernelSpec::riesz_s() const {
  if (auto* r = std::get_if<Riesz>(&kind_)) return r->s;
  throw std::logic_error("kernel is not a Riesz kernel");
}

bool KernelSpec::singular_on_diagonal() const {
  if (auto* r = std::get_if<Riesz>(&kind_)) return r->s >= 0;
  if (auto* g = std::get_if<GeodesicRadial>(&kind_)) return g->R == 1.0;
  return false;
}

double KernelSpec::riesz_from_sq(double d2) const { return RieszProfile(riesz_s()).value(d2); }

double KernelSpec::eval(const Point& x, const Point& y) const {
  check_dims(x, y);
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Riesz>) {
          return RieszProfile(k.s).value((x - y).squaredNorm());
        } else if constexpr (std::is_same_v<T, InnerPower>) {
          return std::pow(x.dot(y), k.k);
        } else {
          check_on_circle(x);
          check_on_circle(y);
          const double v = k.profile(circle_angle(x, y));
          return std::isfinite(v) ? v : kSingular;
        }
      },
      kind_);
}

Point KernelSpec::gradient(const Point& x, const Point& y) const {
  check_dims(x, y);
  return std::visit(
      [&](const auto& k) -> Point {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Riesz>) {
          const double d2 = (x - y).squaredNorm();
          if (d2 == 0.0) throw std::domain_error("kernel gradient: coincident points");
          const RieszProfile prof(k.s);
          return prof.grad_factor(d2, prof.value(d2)) * (x - y);
        } else if constexpr (std::is_same_v<T, InnerPower>) {
          if (k.k == 0) return Point::Zero(x.size());
          return k.k * std::pow(x.dot(y), k.k - 1) * y;
        } else {
          check_on_circle(x);
          check_on_circle(y);
          const double t = circle_angle(x, y);
          if (t == 0.0) throw std::domain_error("kernel gradient: coincident points");
          // Unit tangent at x pointing away from y; the angle grows along it.
          Point away = -(y - x.dot(y) * x);
          const double n = away.norm();
          if (n == 0.0) return Point::Zero(2);
          return k.derivative(t) * away / n;
        }
      },
      kind_);
}

void potential_sums(const KernelSpec& kernel, const PointSet& X, const PointSet& Y,
                    Eigen::Ref<Eigen::VectorXd> F) {
  if (X.rows() != Y.rows()) throw std::invalid_argument("potential_sums: dimension mismatch");
  const Eigen::Index n = X.cols();
  const Eigen::Index m = Y.cols();
  if (F.size() != m) throw std::invalid_argument("potential_sums: output size mismatch");
  if (kernel.is_riesz()) {
    const RieszProfile prof(kernel.riesz_s());
    const Eigen::Index p = X.rows();
    for (Eigen::Index j = 0; j < m; ++j) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        double d2 = 0.0;
        for (Eigen::Index c = 0; c < p; ++c) {
          const double d = X(c, i) - Y(c, j);
          d2 += d * d;
        }
        acc += prof.value(d2);
      }
      F[j] = acc;
    }
    return;
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    double acc = 0.0;
    const Point y = Y.col(j);
    for (Eigen::Index i = 0; i < n; ++i) acc += kernel.eval(X.col(i), y);
    F[j] = acc;
  }
}

void weighted_gradient(const KernelSpec& kernel, const PointSet& X, const PointSet& Y,
                       const Eigen::VectorXd& w, PointSet& G) {
  G.setZero(X.rows(), X.cols());
  const Eigen::Index n = X.cols();
  const Eigen::Index m = Y.cols();
  if (kernel.is_riesz()) {
    const RieszProfile prof(kernel.riesz_s());
    const Eigen::Index p = X.rows();
    for (Eigen::Index j = 0; j < m; ++j) {
      if (w[j] == 0.0) continue;
      for (Eigen::Index i = 0; i < n; ++i) {
        double d2 = 0.0;
        for (Eigen::Index c = 0; c < p; ++c) {
          const double d = X(c, i) - Y(c, j);
          d2 += d * d;
        }
        if (d2 == 0.0) continue;
        const double f = w[j] * prof.grad_factor(d2, prof.value(d2));
        for (Eigen::Index c = 0; c < p; ++c) G(c, i) += f * (X(c, i) - Y(c, j));
      }
    }
    return;
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    if (w[j] == 0.0) continue;
    const Point y = Y.col(j);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Point x = X.col(i);
      if (x == y) continue;
      G.col(i) += w[j] * kernel.gradient(x, y);
    }
  }
}

}  // namespace polarmax

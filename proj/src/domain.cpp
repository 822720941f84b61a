#include "polarmax/domain.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace polarmax {

namespace {

constexpr double kPi = std::numbers::pi;

Point default_center(int p, Point c) {
  if (c.size() == 0) return Point::Zero(p);
  if (c.size() != p) throw std::invalid_argument("domain: center dimension mismatch");
  return c;
}

// Additive recurrence with the generalized golden ratio (Roberts sequence).
class KroneckerSequence {
 public:
  KroneckerSequence(int dim, const Eigen::VectorXd& offset) : alpha_(dim), offset_(offset) {
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
    for (int i = 0; i < dim; ++i) alpha_[i] = std::fmod(std::pow(1.0 / phi, i + 1), 1.0);
  }
  Eigen::VectorXd operator()(std::int64_t k) const {
    Eigen::VectorXd u(alpha_.size());
    for (Eigen::Index i = 0; i < alpha_.size(); ++i) {
      const double v = offset_[i] + static_cast<double>(k) * alpha_[i];
      u[i] = v - std::floor(v);
    }
    return u;
  }

 private:
  Eigen::VectorXd alpha_;
  Eigen::VectorXd offset_;
};

Eigen::VectorXd seed_offset(int dim, std::uint64_t seed) {
  Eigen::VectorXd off = Eigen::VectorXd::Constant(dim, 0.5);
  if (seed == 0) return off;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < dim; ++i) off[i] = u(rng);
  return off;
}

Eigen::MatrixXd random_rotation(int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int j = 0; j < p; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

// Inverse CDF of the density proportional to (1-t^2)^((q-2)/2) on [-1,1], the
// marginal of one coordinate on S^q.
double sphere_coordinate_quantile(int q, double u) {
  if (q == 2) return 2.0 * u - 1.0;
  auto cdf = [q](double t) {
    if (q == 3) {
      const double full = kPi / 2.0;
      return (0.5 * (t * std::sqrt(std::max(0.0, 1.0 - t * t)) + std::asin(t)) + full / 2.0) / full;
    }
    return (t - t * t * t / 3.0 + 2.0 / 3.0) / (4.0 / 3.0);  // q == 4
  };
  double lo = -1.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Maps u in [0,1)^q to S^q in R^(q+1) through nested coordinate quantiles.
void fill_sphere_point(const double* u, int q, double* out) {
  if (q == 1) {
    out[0] = std::cos(2.0 * kPi * u[0]);
    out[1] = std::sin(2.0 * kPi * u[0]);
    return;
  }
  const double t = sphere_coordinate_quantile(q, u[0]);
  const double rho = std::sqrt(std::max(0.0, 1.0 - t * t));
  fill_sphere_point(u + 1, q - 1, out + 1);
  for (int i = 1; i <= q; ++i) out[i] *= rho;
  out[0] = t;
}

PointSet sample_unit_sphere(int p, int n, std::uint64_t seed) {
  PointSet out(p, n);
  if (p == 2) {
    double phase = 0.0;
    if (seed != 0) {
      std::mt19937_64 rng(seed);
      phase = std::uniform_real_distribution<double>(0.0, 2.0 * kPi / n)(rng);
    }
    for (int k = 0; k < n; ++k) {
      const double a = phase + 2.0 * kPi * k / n;
      out(0, k) = std::cos(a);
      out(1, k) = std::sin(a);
    }
    return out;
  }
  if (p == 3) {
    // Fibonacci spiral: equal-area latitude bands, golden-angle longitudes.
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / n;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * k;
      out(0, k) = r * std::cos(a);
      out(1, k) = r * std::sin(a);
      out(2, k) = z;
    }
  } else {
    const KroneckerSequence seq(p - 1, seed_offset(p - 1, 0));
    for (int k = 0; k < n; ++k) {
      const Eigen::VectorXd u = seq(k);
      fill_sphere_point(u.data(), p - 1, out.col(k).data());
    }
  }
  if (seed != 0) out = random_rotation(p, seed) * out;
  // Renormalize to remove rounding drift.
  for (int k = 0; k < n; ++k) out.col(k).normalize();
  return out;
}

}  // namespace

Domain::Domain(Shape shape) : shape_(std::move(shape)) {
  std::visit(
      [this](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere> || std::is_same_v<T, Ball>) {
          if (s.p < 1) throw std::invalid_argument("domain: p must be >= 1");
          if (!(s.radius > 0)) throw std::invalid_argument("domain: radius must be positive");
          s.center = default_center(s.p, s.center);
          dim_ = s.p;
        } else if constexpr (std::is_same_v<T, Cube>) {
          if (s.p < 1) throw std::invalid_argument("domain: p must be >= 1");
          if (!(s.side > 0)) throw std::invalid_argument("domain: side must be positive");
          s.corner = default_center(s.p, s.corner);
          dim_ = s.p;
        } else if constexpr (std::is_same_v<T, Interval>) {
          if (!(s.a < s.b)) throw std::invalid_argument("domain: interval needs a < b");
          dim_ = 1;
        } else {
          if (s.points.cols() == 0 || s.points.rows() == 0)
            throw std::invalid_argument("domain: empty point cloud");
          if (!s.points.allFinite()) throw std::invalid_argument("domain: non-finite cloud point");
          dim_ = static_cast<int>(s.points.rows());
        }
      },
      shape_);
}

Domain Domain::sphere(int p, double radius, Point center) {
  return Domain(Sphere{p, radius, std::move(center)});
}
Domain Domain::circle(double radius, Point center) { return sphere(2, radius, std::move(center)); }
Domain Domain::ball(int p, double radius, Point center) {
  return Domain(Ball{p, radius, std::move(center)});
}
Domain Domain::cube(int p, double side, Point corner) {
  return Domain(Cube{p, side, std::move(corner)});
}
Domain Domain::interval(double a, double b) { return Domain(Interval{a, b}); }
Domain Domain::cloud(PointSet points) { return Domain(PointCloud{std::move(points)}); }

namespace {

double number(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("domain: bad number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("domain: bad number '" + s + "'");
  return v;
}

int integer(const std::string& s) {
  const double v = number(s);
  if (v != std::floor(v) || v < 1 || v > 64) throw std::invalid_argument("domain: bad dimension '" + s + "'");
  return static_cast<int>(v);
}

}  // namespace

Domain Domain::parse(std::string_view text) {
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    // "<shape>@c1,c2,...": shift the sphere/ball center or the cube corner.
    Domain base = parse(text.substr(0, at));
    std::vector<double> c;
    std::stringstream cs{std::string(text.substr(at + 1))};
    for (std::string item; std::getline(cs, item, ',');) c.push_back(number(item));
    if (static_cast<int>(c.size()) != base.ambient_dim())
      throw std::invalid_argument("domain: offset in '" + std::string(text) + "' has the wrong dimension");
    const Point offset = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
    if (auto* sp = std::get_if<Sphere>(&base.shape_)) return sphere(sp->p, sp->radius, offset);
    if (auto* b = std::get_if<Ball>(&base.shape_)) return ball(b->p, b->radius, offset);
    if (auto* q = std::get_if<Cube>(&base.shape_)) return cube(q->p, q->side, offset);
    throw std::invalid_argument("domain: '" + std::string(text) + "' does not take an offset");
  }
  std::vector<std::string> parts;
  std::stringstream ss{std::string(text)};
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.empty()) throw std::invalid_argument("domain: empty descriptor");
  const auto& head = parts[0];
  const auto n = parts.size();
  if (head == "circle" && n <= 2) return circle(n == 2 ? number(parts[1]) : 1.0);
  if (head == "sphere" && (n == 2 || n == 3)) return sphere(integer(parts[1]), n == 3 ? number(parts[2]) : 1.0);
  if (head == "ball" && (n == 2 || n == 3)) return ball(integer(parts[1]), n == 3 ? number(parts[2]) : 1.0);
  if (head == "cube" && (n == 2 || n == 3)) return cube(integer(parts[1]), n == 3 ? number(parts[2]) : 1.0);
  if (head == "interval" && n == 3) return interval(number(parts[1]), number(parts[2]));
  throw std::invalid_argument("domain: cannot parse '" + std::string(text) + "'");
}

std::string Domain::describe() const {
  std::ostringstream os;
  os.precision(17);
  const auto offset = [&os](const Point& c) {
    if (c.size() == 0 || c.isZero()) return;
    os << "@";
    for (Eigen::Index i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          os << "sphere:" << s.p << ":" << s.radius;
          offset(s.center);
        } else if constexpr (std::is_same_v<T, Ball>) {
          os << "ball:" << s.p << ":" << s.radius;
          offset(s.center);
        } else if constexpr (std::is_same_v<T, Cube>) {
          os << "cube:" << s.p << ":" << s.side;
          offset(s.corner);
        } else if constexpr (std::is_same_v<T, Interval>) {
          os << "interval:" << s.a << ":" << s.b;
        } else {
          os << "cloud(n=" << s.points.cols() << ",p=" << s.points.rows() << ")";
        }
      },
      shape_);
  return os.str();
}

bool Domain::is_circle() const {
  auto* s = std::get_if<Sphere>(&shape_);
  return s && s->p == 2;
}

const Point& Domain::center() const {
  if (auto* s = std::get_if<Sphere>(&shape_)) return s->center;
  if (auto* b = std::get_if<Ball>(&shape_)) return b->center;
  throw std::logic_error("domain: center() needs a sphere or ball");
}

double Domain::radius() const {
  if (auto* s = std::get_if<Sphere>(&shape_)) return s->radius;
  if (auto* b = std::get_if<Ball>(&shape_)) return b->radius;
  throw std::logic_error("domain: radius() needs a sphere or ball");
}

void Domain::check_dim(const Point& x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("domain: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                                std::to_string(dim_) + ")");
}

PointSet Domain::sample(int resolution, std::uint64_t seed) const {
  if (resolution < 1) throw std::invalid_argument("sample: resolution must be >= 1");
  return std::visit(
      [&](const auto& s) -> PointSet {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          if (s.p > 5) throw std::invalid_argument("sample: spheres with p > 5 are not supported");
          if (s.p == 1) {
            PointSet out(1, resolution >= 2 ? 2 : 1);
            out(0, 0) = s.center[0] + s.radius;
            if (resolution >= 2) out(0, 1) = s.center[0] - s.radius;
            return out;
          }
          PointSet out = sample_unit_sphere(s.p, resolution, seed);
          return (s.radius * out).colwise() + s.center;
        } else if constexpr (std::is_same_v<T, Ball>) {
          const KroneckerSequence seq(s.p, seed_offset(s.p, seed));
          PointSet out(s.p, resolution);
          int filled = 0;
          for (std::int64_t k = 0; filled < resolution; ++k) {
            const Eigen::VectorXd u = 2.0 * seq(k).array() - 1.0;
            if (u.squaredNorm() <= 1.0) out.col(filled++) = s.center + s.radius * u;
          }
          return out;
        } else if constexpr (std::is_same_v<T, Cube>) {
          int m = static_cast<int>(std::floor(std::pow(resolution, 1.0 / s.p) + 1e-9));
          while (std::pow(m + 1, s.p) <= resolution) ++m;
          while (m > 1 && std::pow(m, s.p) > resolution) --m;
          PointSet out(s.p, resolution);
          std::int64_t grid = 1;
          for (int i = 0; i < s.p; ++i) grid *= m;
          for (std::int64_t idx = 0; idx < grid; ++idx) {
            std::int64_t rem = idx;
            for (int c = 0; c < s.p; ++c) {
              const auto digit = rem % m;
              rem /= m;
              const double frac = m == 1 ? 0.5 : static_cast<double>(digit) / (m - 1);
              out(c, idx) = s.corner[c] + s.side * frac;
            }
          }
          const KroneckerSequence seq(s.p, seed_offset(s.p, seed));
          for (std::int64_t k = grid; k < resolution; ++k)
            out.col(k) = s.corner + s.side * seq(k - grid);
          return out;
        } else if constexpr (std::is_same_v<T, Interval>) {
          PointSet out(1, resolution);
          if (resolution == 1) {
            out(0, 0) = s.a;
            return out;
          }
          for (int k = 0; k < resolution; ++k)
            out(0, k) = s.a + (s.b - s.a) * static_cast<double>(k) / (resolution - 1);
          out(0, resolution - 1) = s.b;
          return out;
        } else {
          return s.points;
        }
      },
      shape_);
}

double Domain::mesh(int resolution) const {
  const double n = std::max(resolution, 1);
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          if (s.p == 1) return 2.0 * s.radius;
          if (s.p == 2) return 2.0 * kPi * s.radius / n;
          return s.radius * std::pow(4.0 * kPi / n, 1.0 / (s.p - 1));
        } else if constexpr (std::is_same_v<T, Ball>) {
          return s.radius * std::pow(std::pow(2.0, s.p) / n, 1.0 / s.p);
        } else if constexpr (std::is_same_v<T, Cube>) {
          return s.side / std::max(1.0, std::pow(n, 1.0 / s.p) - 1.0);
        } else if constexpr (std::is_same_v<T, Interval>) {
          return (s.b - s.a) / std::max(1.0, n - 1.0);
        } else {
          return diameter() / std::sqrt(static_cast<double>(s.points.cols()));
        }
      },
      shape_);
}

double Domain::diameter() const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere> || std::is_same_v<T, Ball>) return 2.0 * s.radius;
        else if constexpr (std::is_same_v<T, Cube>) return s.side * std::sqrt(static_cast<double>(s.p));
        else if constexpr (std::is_same_v<T, Interval>) return s.b - s.a;
        else {
          double best = 0.0;
          for (Eigen::Index i = 0; i < s.points.cols(); ++i)
            best = std::max(best, (s.points.colwise() - s.points.col(i)).colwise().norm().maxCoeff());
          return best;
        }
      },
      shape_);
}

double Domain::distance(const Point& x) const {
  check_dim(x);
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) return std::abs((x - s.center).norm() - s.radius);
        else if constexpr (std::is_same_v<T, Ball>) return std::max(0.0, (x - s.center).norm() - s.radius);
        else if constexpr (std::is_same_v<T, Cube>) {
          const Point lo = s.corner;
          const Point hi = s.corner.array() + s.side;
          return (x - x.cwiseMax(lo).cwiseMin(hi)).norm();
        } else if constexpr (std::is_same_v<T, Interval>) {
          return std::max({0.0, s.a - x[0], x[0] - s.b});
        } else {
          return (s.points.colwise() - x).colwise().norm().minCoeff();
        }
      },
      shape_);
}

Point Domain::project_hull(const Point& x) const {
  check_dim(x);
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere> || std::is_same_v<T, Ball>) {
          const Point d = x - s.center;
          const double r = d.norm();
          return r <= s.radius ? x : Point(s.center + (s.radius / r) * d);
        } else if constexpr (std::is_same_v<T, Cube>) {
          const Point hi = s.corner.array() + s.side;
          return x.cwiseMax(s.corner).cwiseMin(hi);
        } else if constexpr (std::is_same_v<T, Interval>) {
          return Point::Constant(1, std::clamp(x[0], s.a, s.b));
        } else {
          return project_onto_hull(s.points, x);
        }
      },
      shape_);
}

Point Domain::project(const Point& x) const {
  check_dim(x);
  if (auto* s = std::get_if<Sphere>(&shape_)) {
    Point d = x - s->center;
    const double r = d.norm();
    if (r == 0.0) {
      d = Point::Zero(s->p);
      d[0] = 1.0;
      return s->center + s->radius * d;
    }
    return s->center + (s->radius / r) * d;
  }
  if (auto* c = std::get_if<PointCloud>(&shape_)) {
    Eigen::Index best = 0;
    (c->points.colwise() - x).colwise().squaredNorm().minCoeff(&best);
    return c->points.col(best);
  }
  return project_hull(x);
}

Point Domain::random_in_hull(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere> || std::is_same_v<T, Ball>) {
          Point d(s.p);
          for (int i = 0; i < s.p; ++i) d[i] = g(rng);
          const double radial = std::pow(u(rng), 1.0 / s.p);
          return s.center + s.radius * radial * d / d.norm();
        } else if constexpr (std::is_same_v<T, Cube>) {
          Point out(s.p);
          for (int i = 0; i < s.p; ++i) out[i] = s.corner[i] + s.side * u(rng);
          return out;
        } else if constexpr (std::is_same_v<T, Interval>) {
          return Point::Constant(1, s.a + (s.b - s.a) * u(rng));
        } else {
          // Dirichlet(1,...,1) weights.
          Eigen::VectorXd w(s.points.cols());
          for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = -std::log(1.0 - u(rng));
          return s.points * (w / w.sum());
        }
      },
      shape_);
}

Point Domain::random_on_set(std::mt19937_64& rng) const {
  if (auto* s = std::get_if<Sphere>(&shape_)) {
    std::normal_distribution<double> g;
    Point d(s->p);
    for (int i = 0; i < s->p; ++i) d[i] = g(rng);
    return s->center + s->radius * d / d.norm();
  }
  if (auto* c = std::get_if<PointCloud>(&shape_)) {
    std::uniform_int_distribution<Eigen::Index> pick(0, c->points.cols() - 1);
    return c->points.col(pick(rng));
  }
  return random_in_hull(rng);
}

}  // namespace polarmax

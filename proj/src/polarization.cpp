#include "polarmax/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "polarmax/enclosing_ball.hpp"

namespace polarmax {

namespace {

constexpr int kPolishSteps = 25;
constexpr std::size_t kPolishStarts = 8;
constexpr std::size_t kCandidatePool = 256;

void check_compatible(const Domain& A, const Configuration& config) {
  if (config.dim() != A.ambient_dim())
    throw std::invalid_argument("polarization: configuration dimension " + std::to_string(config.dim()) +
                                " does not match the set dimension " + std::to_string(A.ambient_dim()));
}

double potential_at(const KernelSpec& kernel, const Configuration& config, const Point& y) {
  double acc = 0.0;
  for (int i = 0; i < config.size(); ++i) acc += kernel.eval(config.point(i), y);
  return acc;
}

Point potential_gradient(const KernelSpec& kernel, const Configuration& config, const Point& y) {
  Point g = Point::Zero(y.size());
  for (int i = 0; i < config.size(); ++i) {
    const Point x = config.point(i);
    if (x == y) continue;
    g += kernel.gradient(y, x);
  }
  return g;
}

// Removes the normal component on spheres; other sets rely on projection.
Point restrict_to_set(const Domain& A, const Point& y, Point g) {
  if (A.is_sphere()) {
    const Point n = (y - A.center()).normalized();
    g -= g.dot(n) * n;
  }
  return g;
}

// Orthonormal directions along which y can move on A.
Eigen::MatrixXd local_directions(const Domain& A, const Point& y) {
  const int p = A.ambient_dim();
  if (A.is_sphere()) {
    const Point n = (y - A.center()).normalized();
    const Eigen::MatrixXd normal = n;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(normal);
    const Eigen::MatrixXd q = qr.householderQ();
    return q.rightCols(p - 1);
  }
  return Eigen::MatrixXd::Identity(p, p);
}

// Local descent of the potential from `y` over A.
void polish_minimum(const KernelSpec& kernel, const Domain& A, const Configuration& config,
                    double mesh, Point& y, double& value) {
  if (A.is_discrete() || !std::isfinite(value)) return;
  if (A.is_sphere() && A.ambient_dim() == 1) return;
  double h = mesh;
  for (int step = 0; step < kPolishSteps; ++step) {
    const Point g = restrict_to_set(A, y, potential_gradient(kernel, config, y));
    const double gn = g.norm();
    if (!(gn > 0) || !std::isfinite(gn)) break;
    const Point trial = A.project(y - (h / gn) * g);
    const double v = potential_at(kernel, config, trial);
    if (v < value) {
      y = trial;
      value = v;
      h = std::min(2.0 * h, 4.0 * mesh);
    } else {
      h *= 0.5;
    }
  }
}

// Starting points for the polish: the discrete argmin (lowest index on ties)
// and the next lowest samples that are at least two meshes away from every
// earlier pick. A configuration tuned against the sample can hide a deeper
// dip between samples in a gap other than the one holding the argmin.
std::vector<Eigen::Index> polish_candidates(const PointSet& Y, const Eigen::VectorXd& F, double mesh) {
  const Eigen::Index m = F.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const std::size_t head = std::min<std::size_t>(order.size(), kCandidatePool);
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(head), order.end(),
                    [&](Eigen::Index a, Eigen::Index b) { return F[a] < F[b] || (F[a] == F[b] && a < b); });
  std::vector<Eigen::Index> picked;
  for (std::size_t k = 0; k < head && picked.size() < kPolishStarts; ++k) {
    const Eigen::Index j = order[k];
    const bool far = std::all_of(picked.begin(), picked.end(),
                                 [&](Eigen::Index q) { return (Y.col(j) - Y.col(q)).norm() > 2.0 * mesh; });
    if (far) picked.push_back(j);
  }
  return picked;
}

double nearest_distance(const Configuration& config, const Point& y) {
  return (config.points().colwise() - y).colwise().norm().minCoeff();
}

// Min-norm element of the convex hull of the columns of G (projected
// gradient on the weight simplex; G has only a handful of columns).
Point min_norm_combination(const Eigen::MatrixXd& G) {
  const Eigen::Index k = G.cols();
  if (k == 1) return G.col(0);
  const Eigen::MatrixXd gram = G.transpose() * G;
  const double step = 1.0 / std::max(gram.trace(), 1e-300);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(k, 1.0 / k);
  for (int it = 0; it < 200; ++it) w = project_onto_simplex(w - step * (gram * w));
  return G * w;
}

// Local maximum of the nearest-point distance over A. The distance is a
// minimum of smooth functions and the maximum usually sits on a ridge of the
// Voronoi diagram, so the step follows the min-norm element of the near-active
// gradients; the coordinate directions are the fallback.
void polish_maximum_distance(const Configuration& config, const Domain& A, double mesh, Point& y,
                             double& value) {
  if (A.is_discrete()) return;
  if (A.is_sphere() && A.ambient_dim() == 1) return;
  double h = mesh;
  const double h_min = 1e-13 * std::max(1.0, A.diameter());
  for (int step = 0; step < 4 * kPolishSteps && h > h_min; ++step) {
    const Eigen::VectorXd d = (config.points().colwise() - y).colwise().norm();
    std::vector<Point> grads;
    for (Eigen::Index i = 0; i < d.size(); ++i)
      if (d[i] <= value + h && d[i] > 0) grads.push_back(restrict_to_set(A, y, (y - config.point(i)) / d[i]));
    Eigen::MatrixXd G(y.size(), static_cast<Eigen::Index>(grads.size()));
    for (std::size_t j = 0; j < grads.size(); ++j) G.col(static_cast<Eigen::Index>(j)) = grads[j];

    Point best = y;
    double best_value = value;
    if (G.cols() > 0) {
      const Point dir = min_norm_combination(G);
      if (dir.norm() > 1e-12) {
        const Point trial = A.project(y + h * dir.normalized());
        best_value = std::max(best_value, nearest_distance(config, trial));
        if (best_value > value) best = trial;
      }
    }
    if (!(best_value > value)) {
      const Eigen::MatrixXd dirs = local_directions(A, y);
      for (Eigen::Index c = 0; c < dirs.cols(); ++c) {
        for (double sign : {1.0, -1.0}) {
          const Point trial = A.project(y + sign * h * dirs.col(c));
          const double v = nearest_distance(config, trial);
          if (v > best_value) {
            best_value = v;
            best = trial;
          }
        }
      }
    }
    if (best_value > value) {
      y = best;
      value = best_value;
      h *= 1.5;
    } else {
      h *= 0.5;
    }
  }
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::unconstrained: return "unconstrained";
    case Mode::constrained: return "constrained";
    case Mode::two_plate: return "two-plate";
  }
  return "unknown";
}

Mode parse_mode(const std::string& text) {
  if (text == "unconstrained") return Mode::unconstrained;
  if (text == "constrained") return Mode::constrained;
  if (text == "two-plate" || text == "two_plate") return Mode::two_plate;
  throw std::invalid_argument("unknown mode '" + text + "'");
}

PolarizationReport polarization_value(const KernelSpec& kernel, const Domain& A,
                                      const Configuration& config, int resolution, Mode mode) {
  check_compatible(A, config);
  const PointSet Y = A.sample(resolution);
  Eigen::VectorXd F(Y.cols());
  potential_sums(kernel, config.points(), Y, F);

  PolarizationReport report;
  report.kernel = kernel;
  report.mode = mode;
  report.resolution = resolution;
  const double mesh = A.mesh(resolution);
  bool first = true;
  for (Eigen::Index j : polish_candidates(Y, F, mesh)) {
    Point y = Y.col(j);
    double v = F[j];
    polish_minimum(kernel, A, config, mesh, y, v);
    if (first || v < report.value) {
      report.value = v;
      report.witness = std::move(y);
      first = false;
    }
  }
  report.singular = !std::isfinite(report.value);
  return report;
}

std::vector<ProfileSample> potential_profile(const KernelSpec& kernel, const Domain& A,
                                             const Configuration& config, int resolution) {
  check_compatible(A, config);
  const PointSet Y = A.sample(resolution);
  Eigen::VectorXd F(Y.cols());
  potential_sums(kernel, config.points(), Y, F);
  std::vector<ProfileSample> out;
  out.reserve(static_cast<std::size_t>(Y.cols()));
  for (Eigen::Index j = 0; j < Y.cols(); ++j) out.push_back({Y.col(j), F[j]});
  return out;
}

double covering_radius(const Configuration& config, const Domain& A, int resolution) {
  check_compatible(A, config);
  const PointSet Y = A.sample(resolution);
  const double mesh = A.mesh(resolution);
  // Negated so the candidate picker's "lowest first" means farthest first.
  Eigen::VectorXd F(Y.cols());
  for (Eigen::Index j = 0; j < Y.cols(); ++j) F[j] = -nearest_distance(config, Y.col(j));
  double result = -1.0;
  for (Eigen::Index j : polish_candidates(Y, F, mesh)) {
    Point y = Y.col(j);
    double v = -F[j];
    polish_maximum_distance(config, A, mesh, y, v);
    result = std::max(result, v);
  }
  return result;
}

CoveringCertificate covering_lower_bound(const KernelSpec& kernel, const Domain& A, int n,
                                         int resolution) {
  if (n < 1) throw std::invalid_argument("covering_lower_bound: N must be >= 1");
  if (!kernel.is_riesz() || !(kernel.riesz_s() > 0))
    throw std::invalid_argument("covering_lower_bound: needs a Riesz kernel with s > 0");
  const double s = kernel.riesz_s();
  const PointSet Y = A.sample(resolution);
  const Eigen::Index m = Y.cols();
  if (n >= m) throw std::invalid_argument("covering_lower_bound: resolution too small for N");

  // Farthest-point traversal seeded at sample index 0.
  std::vector<Eigen::Index> centers{0};
  Eigen::VectorXd dist = (Y.colwise() - Y.col(0)).colwise().norm().transpose();
  Eigen::VectorXi owner = Eigen::VectorXi::Zero(m);
  while (static_cast<int>(centers.size()) < n) {
    Eigen::Index far = 0;
    for (Eigen::Index j = 1; j < m; ++j)
      if (dist[j] > dist[far]) far = j;
    const int label = static_cast<int>(centers.size());
    centers.push_back(far);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = (Y.col(j) - Y.col(far)).norm();
      if (d < dist[j]) {
        dist[j] = d;
        owner[j] = label;
      }
    }
  }

  CoveringCertificate cert;
  PointSet touched(Y.rows(), n);
  for (int c = 0; c < n; ++c) {
    std::vector<Eigen::Index> members;
    for (Eigen::Index j = 0; j < m; ++j)
      if (owner[j] == c) members.push_back(j);
    PointSet cluster(Y.rows(), static_cast<Eigen::Index>(members.size()));
    for (std::size_t k = 0; k < members.size(); ++k) cluster.col(static_cast<Eigen::Index>(k)) = Y.col(members[k]);
    const EnclosingBall ball = minimal_enclosing_ball(cluster);
    cert.radius = std::max(cert.radius, ball.radius);
    touched.col(c) = A.project(ball.center);
  }
  cert.bound = cert.radius > 0 ? std::pow(2.0 * cert.radius, -s) : kSingular;
  cert.centers = Configuration(std::move(touched));
  cert.achieved = polarization_value(kernel, A, cert.centers, resolution).value;
  return cert;
}

}  // namespace polarmax

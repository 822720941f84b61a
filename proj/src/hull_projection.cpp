#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "polarmax/domain.hpp"

namespace polarmax {

Eigen::VectorXd project_onto_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    cumsum += u[i];
    const double t = (cumsum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

namespace {

// Least squares on the affine hull of the active vertices, dropping the most
// negative vertex until the face solution is feasible. Empty on failure.
Eigen::VectorXd solve_face(const PointSet& P, const Point& x, std::vector<Eigen::Index>& active) {
  Eigen::VectorXd wa;
  while (!active.empty()) {
    const Eigen::Index k = static_cast<Eigen::Index>(active.size());
    wa.resize(k);
    if (k == 1) {
      wa[0] = 1.0;
    } else {
      const Point p0 = P.col(active[0]);
      Eigen::MatrixXd D(P.rows(), k - 1);
      for (Eigen::Index j = 1; j < k; ++j) D.col(j - 1) = P.col(active[j]) - p0;
      const Eigen::VectorXd c = D.colPivHouseholderQr().solve(x - p0);
      wa[0] = 1.0 - c.sum();
      wa.tail(k - 1) = c;
    }
    Eigen::Index worst = 0;
    if (wa.minCoeff(&worst) >= -1e-13) break;
    active.erase(active.begin() + worst);
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(P.cols());
  if (active.empty()) return Eigen::VectorXd();
  for (std::size_t j = 0; j < active.size(); ++j) w[active[j]] = std::max(0.0, wa[static_cast<Eigen::Index>(j)]);
  return w / w.sum();
}

// Polishes the first-order solution w by a few active-set steps: solve on the
// current face, then add the vertex that most violates the KKT conditions.
void polish_active_set(const PointSet& P, const Point& x, Eigen::VectorXd& w) {
  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] > 1e-12) active.push_back(i);
  const double scale = 1.0 + P.cwiseAbs().maxCoeff() * (P.cwiseAbs().maxCoeff() + x.cwiseAbs().maxCoeff());
  for (int round = 0; round <= P.rows() + 2 && !active.empty(); ++round) {
    const Eigen::VectorXd candidate = solve_face(P, x, active);
    if (candidate.size() == 0) return;
    // KKT: every vertex's gradient component is at least the active level.
    const Point y = P * candidate;
    const Eigen::VectorXd g = P.transpose() * (y - x);
    double level = g[active[0]];
    for (auto i : active) level = std::min(level, g[i]);
    Eigen::Index entering = 0;
    const double lowest = g.minCoeff(&entering);
    if (lowest >= level - 1e-13 * scale) {
      w = candidate;
      return;
    }
    if (std::find(active.begin(), active.end(), entering) != active.end()) return;
    active.push_back(entering);
  }
}

}  // namespace

Point project_onto_hull(const PointSet& P, const Point& x, int iterations, double tol) {
  if (P.cols() == 0) throw std::invalid_argument("project_onto_hull: empty point set");
  if (P.rows() != x.size()) throw std::invalid_argument("project_onto_hull: dimension mismatch");
  const Eigen::Index n = P.cols();
  if (n == 1) return P.col(0);

  const Eigen::MatrixXd gram = P * P.transpose();
  const double lipschitz =
      std::max(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram, Eigen::EigenvaluesOnly)
                   .eigenvalues()
                   .maxCoeff(),
               1e-300);
  const double step = 1.0 / lipschitz;

  // Start at the vertex closest to x.
  Eigen::Index nearest = 0;
  (P.colwise() - x).colwise().squaredNorm().minCoeff(&nearest);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  w[nearest] = 1.0;
  Eigen::VectorXd z = w;
  double t = 1.0;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd grad = P.transpose() * (P * z - x);
    const Eigen::VectorXd w_next = project_onto_simplex(z - step * grad);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    z = w_next + ((t - 1.0) / t_next) * (w_next - w);
    const double change = (w_next - w).lpNorm<Eigen::Infinity>();
    w = w_next;
    t = t_next;
    if (change < tol) break;
  }
  polish_active_set(P, x, w);
  return P * w;
}

}  // namespace polarmax

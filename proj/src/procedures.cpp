#include "polarmax/procedures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "polarmax/closed_forms.hpp"
#include "polarmax/polarization.hpp"
#include "polarmax/solver.hpp"

namespace polarmax {

namespace {

// Upper bound on the number of unit vectors with pairwise angle >= pi/6.
// Exact for p <= 2; for p = 3 the disjoint caps of radius pi/12 give
// n <= 2 / (1 - cos(pi/12)) = 58.6, a safe ceiling but not the exact count.
int cap_ceiling(int p) {
  switch (p) {
    case 1: return 2;
    case 2: return 12;
    case 3: return 58;
    default: throw std::invalid_argument("replacement_points: supported only for p <= 3");
  }
}

}  // namespace

ReplacementResult replacement_points(const PointSet& samples, const Point& x) {
  if (samples.cols() == 0) throw std::invalid_argument("replacement_points: empty sample");
  if (samples.rows() != x.size()) throw std::invalid_argument("replacement_points: dimension mismatch");
  const Eigen::Index m = samples.cols();
  const Eigen::VectorXd dist = (samples.colwise() - x).colwise().norm().transpose();
  if (!(dist.minCoeff() > 1e-12)) throw std::invalid_argument("replacement_points: x lies on the sample");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return dist[a] < dist[b]; });

  const double cos_sep = std::cos(std::numbers::pi / 6.0);
  std::vector<Eigen::Index> chosen;
  std::vector<Point> directions;
  for (Eigen::Index j : order) {
    const Point u = (samples.col(j) - x) / dist[j];
    // Angle >= pi/6 from every kept direction <=> cosine <= cos(pi/6).
    const bool separated =
        std::all_of(directions.begin(), directions.end(), [&](const Point& v) { return u.dot(v) <= cos_sep; });
    if (separated) {
      chosen.push_back(j);
      directions.push_back(u);
    }
  }

  ReplacementResult out;
  out.cap_bound = cap_ceiling(static_cast<int>(x.size()));
  out.replacements.resize(samples.rows(), static_cast<Eigen::Index>(chosen.size()));
  for (std::size_t k = 0; k < chosen.size(); ++k) out.replacements.col(static_cast<Eigen::Index>(k)) = samples.col(chosen[k]);

  for (Eigen::Index j = 0; j < m; ++j) {
    const Point y = samples.col(j);
    const double fx = 1.0 / std::max((x - y).squaredNorm(), 1e-300);
    double best = 0.0;
    for (Eigen::Index k = 0; k < out.replacements.cols(); ++k) {
      const double d2 = (out.replacements.col(k) - y).squaredNorm();
      best = std::max(best, d2 > 0 ? 1.0 / d2 : kSingular);
    }
    if (fx > best * (1.0 + 1e-12)) ++out.dominance_violations;
  }
  return out;
}

int non_concentration_census(const Configuration& config, const Domain& A, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("census: eps must be > 0");
  int count = 0;
  for (int i = 0; i < config.size(); ++i)
    if (A.distance(config.point(i)) > eps) ++count;
  return count;
}

double simplex_perturbation_gain(const PointSet& cluster, const PointSet& rest, const KernelSpec& kernel,
                                 const Domain& A, double c2, int resolution) {
  const int p = A.ambient_dim();
  if (cluster.rows() != p || (rest.cols() > 0 && rest.rows() != p))
    throw std::invalid_argument("perturbation: dimension mismatch");
  if (cluster.cols() != p + 1) throw std::invalid_argument("perturbation: the cluster must have p+1 points");
  if (!kernel.is_riesz() || !(kernel.riesz_s() > 0))
    throw std::invalid_argument("perturbation: needs a Riesz kernel with s > 0");
  if (!(c2 > 0)) throw std::invalid_argument("perturbation: c2 must be > 0");
  const Point centroid = cluster.rowwise().mean();
  const double r = A.distance(centroid);
  if (!(r > 0)) throw std::invalid_argument("perturbation: cluster centroid lies on A (r = 0)");

  const Configuration simplex = simplex_configuration(p, c2 * r, centroid);
  PointSet before(p, cluster.cols() + rest.cols()), after(p, cluster.cols() + rest.cols());
  before << cluster, rest;
  after << simplex.points(), rest;
  const int n = static_cast<int>(before.cols());
  const int res = resolution > 0 ? resolution : default_resolution(A, n);
  return polarization_value(kernel, A, Configuration(after), res).value -
         polarization_value(kernel, A, Configuration(before), res).value;
}

}  // namespace polarmax

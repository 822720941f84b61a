#include "polarmax/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "polarmax/parallel.hpp"

namespace polarmax {

namespace {

void normalize_log_weights(const Eigen::VectorXd& logw, Eigen::VectorXd& w) {
  const double m = logw.maxCoeff();
  w = (logw.array() - m).exp();
  w /= w.sum();
}

bool sets_overlap(const Domain& A, const PointSet& Y) {
  for (Eigen::Index j = 0; j < Y.cols(); ++j)
    if (A.distance(Y.col(j)) <= 1e-12) return true;
  return false;
}

// Moves every B-sample point half a mesh along the set (for spheres: a
// rotation in the first coordinate plane, for the rest a shift then a
// projection back onto B).
PointSet jitter(const Domain& B, const PointSet& Y, double half_mesh) {
  PointSet out = Y;
  if (B.is_sphere() && B.ambient_dim() >= 2) {
    const double theta = half_mesh / B.radius();
    const double c = std::cos(theta), s = std::sin(theta);
    for (Eigen::Index j = 0; j < Y.cols(); ++j) {
      const Point v = Y.col(j) - B.center();
      out(0, j) = B.center()[0] + c * v[0] - s * v[1];
      out(1, j) = B.center()[1] + s * v[0] + c * v[1];
    }
    return out;
  }
  for (Eigen::Index j = 0; j < Y.cols(); ++j) {
    Point y = Y.col(j);
    y.array() += half_mesh / std::sqrt(static_cast<double>(y.size()));
    out.col(j) = B.project(y);
  }
  return out;
}

}  // namespace

void DiscreteMeasure::validate() const {
  if (support.cols() != weights.size()) throw std::invalid_argument("measure: support/weight size mismatch");
  if (weights.size() == 0) throw std::invalid_argument("measure: empty support");
  if ((weights.array() < 0).any()) throw std::invalid_argument("measure: negative weight");
  if (std::abs(weights.sum() - 1.0) > 1e-12) throw std::invalid_argument("measure: weights do not sum to 1");
}

DiscreteMeasure counting_measure(const Configuration& config) {
  if (config.size() < 1) throw std::invalid_argument("counting_measure: empty configuration");
  std::vector<Point> atoms;
  std::vector<int> counts;
  for (int i = 0; i < config.size(); ++i) {
    const Point x = config.point(i);
    auto it = std::find(atoms.begin(), atoms.end(), x);
    if (it == atoms.end()) {
      atoms.push_back(x);
      counts.push_back(1);
    } else {
      ++counts[static_cast<std::size_t>(it - atoms.begin())];
    }
  }
  DiscreteMeasure mu;
  mu.support.resize(config.dim(), static_cast<Eigen::Index>(atoms.size()));
  mu.weights.resize(static_cast<Eigen::Index>(atoms.size()));
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    mu.support.col(static_cast<Eigen::Index>(k)) = atoms[k];
    mu.weights[static_cast<Eigen::Index>(k)] = static_cast<double>(counts[k]) / config.size();
  }
  return mu;
}

ChebyshevResult chebyshev_constant(const KernelSpec& kernel, const Domain& A, const Domain& B,
                                   const ChebyshevOptions& opts) {
  if (A.ambient_dim() != B.ambient_dim()) throw std::invalid_argument("chebyshev: A and B differ in dimension");
  if (opts.res_a < 1 || opts.res_b < 1) throw std::invalid_argument("chebyshev: resolutions must be >= 1");
  if (opts.iterations < 1) throw std::invalid_argument("chebyshev: iterations must be >= 1");

  const PointSet X = A.sample(opts.res_a);
  PointSet Y = B.sample(opts.res_b);
  if (kernel.singular_on_diagonal() && sets_overlap(A, Y)) Y = jitter(B, Y, 0.5 * B.mesh(opts.res_b));

  // M(i, j) = K(x_i, y_j): rows are A-sample points (minimizer), columns are
  // B-sample atoms (maximizer).
  const Eigen::Index m = X.cols(), n = Y.cols();
  Eigen::MatrixXd M(m, n);
  const int threads = opts.threads > 0 ? opts.threads : default_thread_count();
  parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t i) {
    const Eigen::Index r = static_cast<Eigen::Index>(i);
    const Point x = X.col(r);
    for (Eigen::Index j = 0; j < n; ++j) M(r, j) = kernel.eval(x, Y.col(j));
  });
  if (!M.allFinite()) throw std::domain_error("chebyshev: kernel is singular on the sampled pairs");

  const double range = M.maxCoeff() - M.minCoeff();
  const double scale = std::max({std::abs(M.maxCoeff()), std::abs(M.minCoeff()), 1e-300});
  ChebyshevResult out;
  out.tolerance = opts.tolerance > 0 ? opts.tolerance : 1e-4 * scale;

  const auto finish = [&](const Eigen::VectorXd& mu, double upper) {
    out.measure.support = Y;
    out.measure.weights = mu / mu.sum();
    out.value = (M * out.measure.weights).minCoeff();
    out.duality_gap = std::max(0.0, upper - out.value);
  };

  if (range <= 0) {
    // Constant payoff: every measure is optimal.
    finish(Eigen::VectorXd::Constant(n, 1.0 / n), M(0, 0));
    out.converged = true;
    return out;
  }

  const double eta = 0.5 / range;
  Eigen::VectorXd log_mu = Eigen::VectorXd::Zero(n), log_nu = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd mu, nu;
  normalize_log_weights(log_mu, mu);
  normalize_log_weights(log_nu, nu);
  Eigen::VectorXd col_payoff = M.transpose() * nu;  // payoff of each B-atom
  Eigen::VectorXd row_payoff = M * mu;              // potential at each A-point
  Eigen::VectorXd prev_col = col_payoff, prev_row = row_payoff;
  Eigen::VectorXd mu_sum = Eigen::VectorXd::Zero(n), nu_sum = Eigen::VectorXd::Zero(m);

  double best_lower = -std::numeric_limits<double>::infinity();
  double best_upper = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_mu = mu;
  const auto observe = [&](const Eigen::VectorXd& mu_c, const Eigen::VectorXd& nu_c) {
    const double lower = (M * mu_c).minCoeff();
    const double upper = (M.transpose() * nu_c).maxCoeff();
    if (lower > best_lower) {
      best_lower = lower;
      best_mu = mu_c;
    }
    best_upper = std::min(best_upper, upper);
  };

  int it = 0;
  for (; it < opts.iterations; ++it) {
    log_mu += eta * (2.0 * col_payoff - prev_col);
    log_nu -= eta * (2.0 * row_payoff - prev_row);
    normalize_log_weights(log_mu, mu);
    normalize_log_weights(log_nu, nu);
    mu_sum += mu;
    nu_sum += nu;
    prev_col = col_payoff;
    prev_row = row_payoff;
    col_payoff = M.transpose() * nu;
    row_payoff = M * mu;
    if ((it + 1) % 100 == 0 || it + 1 == opts.iterations) {
      observe(mu_sum / mu_sum.sum(), nu_sum / nu_sum.sum());
      observe(mu, nu);
      if (best_upper - best_lower <= out.tolerance) {
        ++it;
        break;
      }
    }
  }
  out.iterations = it;
  finish(best_mu, best_upper);
  out.converged = out.duality_gap <= out.tolerance;
  return out;
}

double sphere_moment_constant(int p, int k) {
  if (p < 2) throw std::invalid_argument("sphere_moment_constant: need p >= 2");
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("sphere_moment_constant: k must be even and >= 0");
  const double num = std::tgamma(p / 2.0) * std::tgamma((k + 1) / 2.0);
  const double den = std::tgamma((p + k) / 2.0);
  if (std::isfinite(num) && std::isfinite(den)) return num / (std::sqrt(std::numbers::pi) * den);
  // Large arguments: fall back to log-gamma.
  const double lg = std::lgamma(p / 2.0) + std::lgamma((k + 1) / 2.0) - std::lgamma((p + k) / 2.0);
  return std::exp(lg) / std::sqrt(std::numbers::pi);
}

}  // namespace polarmax

#include "polarmax/covering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

#include "polarmax/closed_forms.hpp"
#include "polarmax/parallel.hpp"

namespace polarmax {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCrossCheckS = 64.0;

void project_all(const Domain& A, Mode mode, PointSet& X) {
  for (Eigen::Index i = 0; i < X.cols(); ++i) {
    const Point x = X.col(i);
    X.col(i) = mode == Mode::unconstrained ? A.project_hull(x) : A.project(x);
  }
}

// Nearest-point distance of every sample and the owning configuration index.
void nearest(const PointSet& X, const PointSet& Y, Eigen::VectorXd& d, Eigen::VectorXi& owner) {
  d.resize(Y.cols());
  owner.resize(Y.cols());
  for (Eigen::Index j = 0; j < Y.cols(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    int who = 0;
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
      const double v = (X.col(i) - Y.col(j)).squaredNorm();
      if (v < best) {
        best = v;
        who = static_cast<int>(i);
      }
    }
    d[j] = std::sqrt(best);
    owner[j] = who;
  }
}

double softmax(const Eigen::VectorXd& d, double k, Eigen::VectorXd* w) {
  const double m = d.maxCoeff();
  const Eigen::ArrayXd e = (k * (d.array() - m)).exp();
  const double z = e.sum();
  if (w) *w = e.matrix() / z;
  return m + std::log(z) / k;
}

Configuration descend(const Domain& A, const PointSet& Y, PointSet X, const CoverOptions& opts) {
  project_all(A, opts.mode, X);
  Eigen::VectorXd d, w;
  Eigen::VectorXi owner;
  nearest(X, Y, d, owner);
  PointSet best_X = X;
  double best_hard = d.maxCoeff();
  const int stages = std::max(1, opts.stages);
  const int per_stage = std::max(1, opts.iterations / stages);
  double h = 0.05 * A.diameter();
  const double h_min = 1e-14 * std::max(1.0, A.diameter());
  for (int stage = 0; stage < stages; ++stage) {
    const double t = stages == 1 ? 1.0 : static_cast<double>(stage) / (stages - 1);
    const double beta = opts.beta_start * std::pow(opts.beta_end / opts.beta_start, t);
    const double k = beta / std::max(d.maxCoeff(), 1e-12);
    double S = softmax(d, k, &w);
    h = std::max(h, 1e-6 * A.diameter());
    for (int it = 0; it < per_stage; ++it) {
      PointSet G = PointSet::Zero(X.rows(), X.cols());
      for (Eigen::Index j = 0; j < Y.cols(); ++j) {
        if (d[j] <= 0) continue;
        G.col(owner[j]) += w[j] * (X.col(owner[j]) - Y.col(j)) / d[j];
      }
      double gmax = 0.0;
      for (Eigen::Index i = 0; i < G.cols(); ++i) gmax = std::max(gmax, G.col(i).norm());
      if (!(gmax > 0)) break;
      const PointSet dir = -G / gmax;
      bool accepted = false;
      while (h > h_min) {
        PointSet trial = X + h * dir;
        project_all(A, opts.mode, trial);
        Eigen::VectorXd td;
        Eigen::VectorXi towner;
        nearest(trial, Y, td, towner);
        const double tS = softmax(td, k, nullptr);
        if (tS < S) {
          X = std::move(trial);
          d = std::move(td);
          owner = std::move(towner);
          S = softmax(d, k, &w);
          h *= 1.5;
          accepted = true;
          if (d.maxCoeff() < best_hard) {
            best_hard = d.maxCoeff();
            best_X = X;
          }
          break;
        }
        h *= 0.5;
      }
      if (!accepted) break;
    }
  }
  return Configuration(std::move(best_X));
}

std::vector<Configuration> cover_warm_starts(const Domain& A, int n, Mode mode) {
  std::vector<Configuration> out;
  const int p = A.ambient_dim();
  const bool unit_circle = A.is_circle() && A.radius() == 1.0 && A.center().isZero();
  if (mode == Mode::unconstrained) {
    if (unit_circle) out.push_back(circle_unconstrained_cover(n).config);
    if (std::holds_alternative<Sphere>(A.shape()) || std::holds_alternative<Ball>(A.shape()))
      out.push_back(Configuration::repeated(A.center(), n));
    if (A.is_sphere() && n == p + 1 && p >= 2) {
      // Transfer the inscribed simplex (a constrained covering) inward.
      const Configuration unit = simplex_configuration(p, 1.0);
      const double eta = covering_radius(unit, Domain::sphere(p), default_resolution(Domain::sphere(p), n));
      if (eta < std::sqrt(2.0)) {
        PointSet pts = sphere_transfer(eta, unit).config.points() * A.radius();
        pts.colwise() += A.center();
        out.emplace_back(std::move(pts));
      }
    }
  } else {
    if (A.is_circle()) out.push_back(regular_polygon(n, A.radius(), 0.0, A.center()));
    if (A.is_sphere() && n == p + 1 && p >= 2) out.push_back(simplex_configuration(p, A.radius(), A.center()));
  }
  if (auto* iv = std::get_if<Interval>(&A.shape())) {
    PointSet pts(1, n);
    for (int k = 0; k < n; ++k) pts(0, k) = iv->a + (iv->b - iv->a) * (k + 0.5) / n;
    out.emplace_back(std::move(pts));
  }
  const PointSet samples = A.sample(std::max(default_resolution(A, n), n));
  if (samples.cols() >= n) out.push_back(farthest_point_subset(samples, n));
  return out;
}

}  // namespace

CoverReport circle_unconstrained_cover(int n) {
  if (n < 1) throw std::invalid_argument("circle cover: N must be >= 1");
  CoverReport out;
  out.mode = Mode::unconstrained;
  if (n <= 2) {
    out.eta = 1.0;
    out.config = Configuration::repeated(Point::Zero(2), n);
    return out;
  }
  out.eta = std::sin(kPi / n);
  out.config = regular_polygon(n, std::cos(kPi / n), kPi / n);
  return out;
}

TransferResult sphere_transfer(double eta, const Configuration& on_sphere) {
  if (!(eta > 0) || !(eta < std::sqrt(2.0)))
    throw std::invalid_argument("sphere_transfer: eta must lie in (0, sqrt 2)");
  if (on_sphere.size() < on_sphere.dim() + 1)
    throw std::invalid_argument("sphere_transfer: needs N >= p + 1 (fewer points collapse to the origin)");
  const auto residual = [eta](double rho) {
    const double a = 1.0 - std::sqrt(1.0 - rho * rho);
    return a * a + rho * rho - eta * eta;
  };
  double lo = 0.0, hi = std::min(eta, 1.0);
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (residual(mid) < 0 ? lo : hi) = mid;
  }
  const double rho = 0.5 * (lo + hi);
  TransferResult out;
  out.eta_star = rho;
  out.r = std::sqrt(1.0 - rho * rho);
  out.config = Configuration(on_sphere.points() * out.r);
  return out;
}

CoverReport minimize_covering(const Domain& A, int n, const CoverOptions& opts) {
  if (n < 1) throw std::invalid_argument("cover: N must be >= 1");
  if (opts.mode == Mode::two_plate) throw std::invalid_argument("cover: two-plate mode is not defined for coverings");
  if (opts.restarts < 1) throw std::invalid_argument("cover: restarts must be >= 1");
  if (!(opts.beta_start > 0) || !(opts.beta_start < opts.beta_end))
    throw std::invalid_argument("cover: need 0 < beta_start < beta_end");
  const int resolution = opts.resolution > 0 ? opts.resolution : default_resolution(A, n);
  const PointSet Y = A.sample(resolution);

  std::optional<Configuration> warm;
  double warm_eta = std::numeric_limits<double>::infinity();
  for (auto& c : cover_warm_starts(A, n, opts.mode)) {
    const double e = covering_radius(c, A, resolution);
    if (e < warm_eta) {
      warm_eta = e;
      warm = std::move(c);
    }
  }

  std::vector<CoverReport> outcomes(static_cast<std::size_t>(opts.restarts));
  const int threads = opts.threads > 0 ? opts.threads : default_thread_count();
  parallel_for(outcomes.size(), threads, [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint64_t>(opts.seed), static_cast<std::uint64_t>(r),
                      std::uint64_t{0x5bd1e995}};
    std::mt19937_64 rng(seq);
    PointSet X(A.ambient_dim(), n);
    if (r == 0 && warm) {
      X = warm->points();
    } else {
      for (int i = 0; i < n; ++i)
        X.col(i) = opts.mode == Mode::unconstrained ? A.random_in_hull(rng) : A.random_on_set(rng);
    }
    CoverReport rep;
    rep.mode = opts.mode;
    rep.config = descend(A, Y, X, opts);
    rep.eta = covering_radius(rep.config, A, resolution);
    if (r == 0 && warm && warm_eta <= rep.eta) {
      rep.config = *warm;
      rep.eta = warm_eta;
    }
    outcomes[r] = std::move(rep);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r].eta < outcomes[best].eta) best = r;
  CoverReport out = std::move(outcomes[best]);

  if (opts.cross_check) {
    SolveOptions so;
    so.restarts = opts.restarts;
    so.seed = opts.seed;
    so.mode = opts.mode;
    so.resolution = resolution;
    so.threads = opts.threads;
    const SolveResult solved = maximize_polarization(KernelSpec::riesz(kCrossCheckS), A, n, so);
    out.cross_check_eta = covering_radius(solved.config, A, resolution);
  }
  return out;
}

}  // namespace polarmax

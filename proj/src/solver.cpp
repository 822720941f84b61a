#include "polarmax/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "polarmax/closed_forms.hpp"
#include "polarmax/parallel.hpp"

namespace polarmax {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const Domain& feasible_set(const Domain& A, const SolveOptions& opts) {
  return opts.mode == Mode::two_plate ? *opts.plate : A;
}

void project_config(const Domain& A, const SolveOptions& opts, PointSet& X) {
  const Domain& target = feasible_set(A, opts);
  for (Eigen::Index i = 0; i < X.cols(); ++i) {
    const Point x = X.col(i);
    X.col(i) = opts.mode == Mode::unconstrained ? target.project_hull(x) : target.project(x);
  }
}

// Softmin of F at relative inverse temperature beta; fills normalized weights.
double softmin(const Eigen::VectorXd& F, double beta, double scale, Eigen::VectorXd* weights) {
  const double m = F.minCoeff();
  if (!std::isfinite(m)) {
    if (weights) weights->setZero(F.size());
    return m;
  }
  const double k = beta / scale;
  double z = 0.0;
  for (Eigen::Index j = 0; j < F.size(); ++j) z += std::exp(-k * (F[j] - m));
  if (weights) {
    weights->resize(F.size());
    for (Eigen::Index j = 0; j < F.size(); ++j) (*weights)[j] = std::exp(-k * (F[j] - m)) / z;
  }
  return m - std::log(z) / k;
}

// What the softmin temperature is measured against. The depth of the minimum
// suits points that live on A (potentials near A's samples blow up, so the
// range would flatten the weights); the range of the sampled potential suits
// points inside conv(A), where it pulls the whole configuration outward
// first. Restarts alternate between the two.
enum class ScaleRule { depth, range };

double temperature_scale(const Eigen::VectorXd& F, ScaleRule rule) {
  const double m = F.minCoeff();
  const double floor = 1e-12 * std::max(1.0, std::abs(m));
  if (rule == ScaleRule::depth) return std::max(std::abs(m), floor);
  double hi = -kSingular;
  for (Eigen::Index j = 0; j < F.size(); ++j)
    if (std::isfinite(F[j])) hi = std::max(hi, F[j]);
  return std::max(hi - m, floor);
}

struct RestartOutcome {
  Configuration config;
  PolarizationReport report;
};

class Ascent {
 public:
  Ascent(const KernelSpec& kernel, const Domain& A, const SolveOptions& opts, const PointSet& samples,
         int resolution)
      : kernel_(kernel), A_(A), opts_(opts), Y_(samples), resolution_(resolution) {}

  RestartOutcome run(PointSet X, ScaleRule scale_rule) const {
    project_config(A_, opts_, X);
    Eigen::VectorXd F(Y_.cols());
    potential_sums(kernel_, X, Y_, F);
    PointSet best_X = X;
    double best_hard = F.minCoeff();

    const int stages = std::max(1, opts_.stages);
    const int per_stage = std::max(1, opts_.iterations / stages);
    double h = 0.05 * feasible_set(A_, opts_).diameter();
    const double h_min = 1e-14 * std::max(1.0, A_.diameter());
    Eigen::VectorXd w;
    PointSet G;
    for (int stage = 0; stage < stages; ++stage) {
      const double t = stages == 1 ? 1.0 : static_cast<double>(stage) / (stages - 1);
      const double beta = opts_.beta_start * std::pow(opts_.beta_end / opts_.beta_start, t);
      const double scale = temperature_scale(F, scale_rule);
      if (!std::isfinite(scale)) break;
      double S = softmin(F, beta, scale, &w);
      h = std::max(h, 1e-6 * A_.diameter());
      for (int it = 0; it < per_stage; ++it) {
        weighted_gradient(kernel_, X, Y_, w, G);
        double gmax = 0.0;
        for (Eigen::Index i = 0; i < G.cols(); ++i) gmax = std::max(gmax, G.col(i).norm());
        if (!(gmax > 0) || !std::isfinite(gmax)) break;
        // Every point moves along its own gradient direction, so points whose
        // gradient is small still make progress; the backtracking test keeps
        // this an ascent step for the surrogate.
        PointSet direction(G.rows(), G.cols());
        for (Eigen::Index i = 0; i < G.cols(); ++i) {
          const double gn = G.col(i).norm();
          direction.col(i) = gn > 1e-300 * gmax ? Point(G.col(i) / gn) : Point::Zero(G.rows());
        }
        bool accepted = false;
        PointSet trial;
        Eigen::VectorXd trial_F(Y_.cols());
        while (h > h_min) {
          trial = X + h * direction;
          project_config(A_, opts_, trial);
          potential_sums(kernel_, trial, Y_, trial_F);
          const double trial_S = softmin(trial_F, beta, scale, nullptr);
          if (trial_S > S) {
            accepted = true;
            const double change = std::abs(trial_S - S);
            X = std::move(trial);
            F = trial_F;
            S = softmin(F, beta, scale, &w);
            h *= 1.5;
            if (F.minCoeff() > best_hard) {
              best_hard = F.minCoeff();
              best_X = X;
            }
            if (change <= opts_.tolerance * std::max(1.0, std::abs(S))) accepted = false;
            break;
          }
          h *= 0.5;
        }
        if (!accepted) break;
      }
    }

    const Mode report_mode = opts_.mode;
    RestartOutcome out{Configuration(best_X),
                       polarization_value(kernel_, A_, Configuration(best_X), resolution_, report_mode)};
    PolarizationReport last = polarization_value(kernel_, A_, Configuration(X), resolution_, report_mode);
    if (last.value > out.report.value) out = {Configuration(X), std::move(last)};
    return out;
  }

 private:
  const KernelSpec& kernel_;
  const Domain& A_;
  const SolveOptions& opts_;
  const PointSet& Y_;
  int resolution_;
};

PointSet random_start(const Domain& A, int n, const SolveOptions& opts, std::mt19937_64& rng) {
  const Domain& target = feasible_set(A, opts);
  PointSet X(target.ambient_dim(), n);
  for (int i = 0; i < n; ++i)
    X.col(i) = opts.mode == Mode::unconstrained ? target.random_in_hull(rng) : target.random_on_set(rng);
  return X;
}

bool concentric_circles(const Domain& A, const Domain& B) {
  return A.is_circle() && B.is_circle() && (A.center() - B.center()).norm() < 1e-12;
}

}  // namespace

void SolveOptions::validate() const {
  if (restarts < 1) throw std::invalid_argument("solve: restarts must be >= 1");
  if (iterations < 0) throw std::invalid_argument("solve: iterations must be >= 0");
  if (stages < 1) throw std::invalid_argument("solve: stages must be >= 1");
  if (!(beta_start > 0) || !(beta_start < beta_end))
    throw std::invalid_argument("solve: need 0 < beta_start < beta_end");
  if (!(tolerance >= 0)) throw std::invalid_argument("solve: tolerance must be >= 0");
  if (resolution < 0) throw std::invalid_argument("solve: resolution must be >= 0");
  if (mode == Mode::two_plate && !plate) throw std::invalid_argument("solve: two-plate mode needs a plate B");
}

int default_resolution(const Domain& A, int n) {
  return std::visit(
      [&](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          if (s.p == 2) {
            const int want = std::max(256, 16 * n);
            const int unit = 2 * n;
            return ((want + unit - 1) / unit) * unit;
          }
          return std::max(800, 40 * n);
        } else if constexpr (std::is_same_v<T, Interval>) {
          return std::max(257, 16 * n + 1);
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          return static_cast<int>(s.points.cols());
        } else {
          return std::max(1024, 64 * n);
        }
      },
      A.shape());
}

Configuration farthest_point_subset(const PointSet& samples, int n) {
  if (n < 1) throw std::invalid_argument("farthest_point_subset: N must be >= 1");
  const Eigen::Index m = samples.cols();
  PointSet out(samples.rows(), n);
  Eigen::VectorXd dist = (samples.colwise() - samples.col(0)).colwise().norm().transpose();
  out.col(0) = samples.col(0);
  for (int k = 1; k < n; ++k) {
    Eigen::Index far = 0;
    for (Eigen::Index j = 1; j < m; ++j)
      if (dist[j] > dist[far]) far = j;
    out.col(k) = samples.col(far);
    dist = dist.cwiseMin((samples.colwise() - samples.col(far)).colwise().norm().transpose());
  }
  return Configuration(std::move(out));
}

std::vector<Configuration> warm_starts(const KernelSpec& kernel, const Domain& A, int n,
                                       const SolveOptions& opts) {
  std::vector<Configuration> out;
  const bool riesz_positive = kernel.is_riesz() && kernel.riesz_s() > 0;
  const int p = A.ambient_dim();
  const bool round = std::holds_alternative<Sphere>(A.shape()) || std::holds_alternative<Ball>(A.shape());

  switch (opts.mode) {
    case Mode::unconstrained: {
      if (round) out.push_back(Configuration::repeated(A.center(), n));
      if (A.is_circle() && riesz_positive && n >= 3) {
        const double r = circle_optimal_radius(n, kernel.riesz_s()) * A.radius();
        out.push_back(regular_polygon(n, r, 0.0, A.center()));
      }
      if (A.is_sphere() && p >= 2 && n == p + 1) {
        // Scale the inscribed simplex by the best factor on a coarse grid.
        const Configuration unit = simplex_configuration(p, A.radius(), A.center());
        const int res = default_resolution(A, n);
        double best_t = 0.0, best_v = -std::numeric_limits<double>::infinity();
        for (int k = 1; k <= 40; ++k) {
          const double t = k / 40.0;
          PointSet pts = (unit.points().colwise() - A.center()) * t;
          pts.colwise() += A.center();
          const double v = polarization_value(kernel, A, Configuration(pts), res).value;
          if (v > best_v) {
            best_v = v;
            best_t = t;
          }
        }
        PointSet pts = (unit.points().colwise() - A.center()) * best_t;
        pts.colwise() += A.center();
        out.emplace_back(std::move(pts));
      }
      if (!round && !A.is_discrete()) {
        // Cell centers of an equal partition.
        if (auto* iv = std::get_if<Interval>(&A.shape())) {
          PointSet pts(1, n);
          for (int k = 0; k < n; ++k) pts(0, k) = iv->a + (iv->b - iv->a) * (k + 0.5) / n;
          out.emplace_back(std::move(pts));
        }
      }
      break;
    }
    case Mode::constrained: {
      if (A.is_circle()) out.push_back(regular_polygon(n, A.radius(), 0.0, A.center()));
      if (A.is_sphere() && p >= 2 && n == p + 1) out.push_back(simplex_configuration(p, A.radius(), A.center()));
      if (auto* iv = std::get_if<Interval>(&A.shape())) {
        PointSet pts(1, n);
        for (int k = 0; k < n; ++k) pts(0, k) = iv->a + (iv->b - iv->a) * (k + 0.5) / n;
        out.emplace_back(std::move(pts));
      }
      break;
    }
    case Mode::two_plate: {
      const Domain& B = *opts.plate;
      if (concentric_circles(A, B)) out.push_back(regular_polygon(n, B.radius(), 0.0, B.center()));
      break;
    }
  }
  // Generic fallback: a well-spread subset of the feasible set.
  const Domain& target = feasible_set(A, opts);
  const PointSet samples = target.sample(std::max(default_resolution(target, n), n));
  if (samples.cols() >= n) {
    Configuration spread = farthest_point_subset(samples, n);
    if (opts.mode == Mode::unconstrained) {
      PointSet pts = spread.points();
      for (Eigen::Index i = 0; i < pts.cols(); ++i) pts.col(i) = target.project_hull(pts.col(i));
      spread = Configuration(std::move(pts));
    }
    out.push_back(std::move(spread));
  }
  return out;
}

SolveResult maximize_polarization(const KernelSpec& kernel, const Domain& A, int n, const SolveOptions& opts) {
  if (n < 1) throw std::invalid_argument("solve: N must be >= 1");
  opts.validate();
  if (opts.mode == Mode::two_plate && opts.plate->ambient_dim() != A.ambient_dim())
    throw std::invalid_argument("solve: plate B dimension differs from A");

  const int resolution = opts.resolution > 0 ? opts.resolution : default_resolution(A, n);
  const PointSet samples = A.sample(resolution);

  SolveResult result;
  result.warm_start_value = kNaN;
  std::optional<Configuration> warm;
  if (opts.warm_start) {
    for (auto& candidate : warm_starts(kernel, A, n, opts)) {
      const double v = polarization_value(kernel, A, candidate, resolution, opts.mode).value;
      if (std::isnan(result.warm_start_value) || v > result.warm_start_value) {
        result.warm_start_value = v;
        warm = std::move(candidate);
      }
    }
  }

  const Ascent ascent(kernel, A, opts, samples, resolution);
  std::vector<std::optional<RestartOutcome>> outcomes(static_cast<std::size_t>(opts.restarts));
  const int threads = opts.threads > 0 ? opts.threads : default_thread_count();
  parallel_for(outcomes.size(), threads, [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint64_t>(opts.seed), static_cast<std::uint64_t>(r),
                      std::uint64_t{0x9e3779b97f4a7c15ULL}};
    std::mt19937_64 rng(seq);
    PointSet X;
    if (r == 0 && warm) X = warm->points();
    else X = random_start(A, n, opts, rng);
    RestartOutcome out = ascent.run(X, r % 2 == 0 ? ScaleRule::depth : ScaleRule::range);
    if (r == 0 && warm) {
      // The warm start itself competes, so the result never falls below it.
      PolarizationReport base = polarization_value(kernel, A, *warm, resolution, opts.mode);
      if (base.value >= out.report.value) out = {*warm, std::move(base)};
    }
    outcomes[r] = std::move(out);
  });

  int best = -1;
  for (int r = 0; r < opts.restarts; ++r) {
    const double v = outcomes[r]->report.value;
    result.restart_values.push_back(v);
    if (std::isnan(v)) continue;
    if (best < 0 || v > outcomes[best]->report.value) best = r;
  }
  if (best < 0 || !std::isfinite(outcomes[best]->report.value)) {
    result.success = false;
    result.message = "objective is not finite at any restart";
    best = std::max(best, 0);
  }
  result.best_restart = best;
  result.config = outcomes[best]->config;
  result.report = outcomes[best]->report;
  return result;
}

}  // namespace polarmax

#include "polarmax/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polarmax/special_functions.hpp"

namespace polarmax {

namespace {

// Neumaier compensated sum, so the result does not depend on how many terms
// were added before a large one.
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

double tau(double s, double d, int n) {
  if (n < 2) throw std::invalid_argument("tau: N must be >= 2");
  if (!(d > 0)) throw std::invalid_argument("tau: d must be > 0");
  const double N = n;
  if (s > d) return std::pow(N, s / d);
  if (s == d) return N * std::log(N);
  return N;
}

std::string to_string(ReferenceStatus status) {
  return status == ReferenceStatus::exact ? "exact" : "conjectured";
}

std::optional<SigmaReference> sigma_reference(double s, int d) {
  if (d >= 1 && s == d) return SigmaReference{unit_ball_volume(d), ReferenceStatus::exact};
  if (d == 1 && s > 1)
    return SigmaReference{2.0 * riemann_zeta(s) * (std::pow(2.0, s) - 1.0), ReferenceStatus::exact};
  if (d == 2 && s > 2) {
    // A cutoff of 2000 keeps the tail bound far below the conjecture's
    // relevance while staying cheap enough for interactive use.
    const LatticeSum z = epstein_zeta_hex(s, 2000.0);
    return SigmaReference{(std::pow(3.0, s / 2.0) - 1.0) * z.value / 2.0, ReferenceStatus::conjectured};
  }
  return std::nullopt;
}

LatticeSum epstein_zeta_hex(double s, double cutoff) {
  if (!(s > 2)) throw std::domain_error("epstein_zeta_hex: the sum converges only for s > 2");
  if (!(cutoff >= 1)) throw std::invalid_argument("epstein_zeta_hex: cutoff must be >= 1");
  const double R2 = cutoff * cutoff;
  const double h = std::sqrt(3.0) / 2.0;
  const int m_max = static_cast<int>(std::floor(cutoff / h));
  Accumulator acc;
  for (int m = -m_max; m <= m_max; ++m) {
    const double y2 = (h * m) * (h * m);
    const double half_width = std::sqrt(std::max(0.0, R2 - y2));
    const int lo = static_cast<int>(std::ceil(-half_width - 0.5 * m));
    const int hi = static_cast<int>(std::floor(half_width - 0.5 * m));
    Accumulator row;
    for (int n = lo; n <= hi; ++n) {
      if (n == 0 && m == 0) continue;
      const double x = n + 0.5 * m;
      const double r2 = x * x + y2;
      if (r2 > R2) continue;
      row.add(std::pow(r2, -s / 2.0));
    }
    acc.add(row.value());
  }
  // Counting function N(r) = pi r^2 / a + E(r) with cell area a and
  // |E(r)| <= (pi / a)(2 r rho + rho^2), rho the lattice covering radius.
  const double a = h;
  const double rho = 1.0 / std::sqrt(3.0);
  const double R = cutoff;
  const double main_tail = 2.0 * std::numbers::pi / (a * (s - 2.0)) * std::pow(R, 2.0 - s);
  const double c = std::numbers::pi / a;
  const double bound = c * (2.0 * R * rho + rho * rho) * std::pow(R, -s) +
                       c * (2.0 * rho * s / (s - 1.0) * std::pow(R, 1.0 - s) + rho * rho * std::pow(R, -s));
  return {acc.value() + main_tail, bound};
}

std::pair<double, double> affine_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("affine_fit: bad input sizes");
  const double n = static_cast<double>(x.size());
  if (x.size() == 1) return {y[0], 0.0};
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0 ? sxy / sxx : 0.0;
  return {my - slope * mx, slope};
}

AsymptoticRun h_star_ratio_run(const KernelSpec& kernel, const Domain& A, double d, const std::vector<int>& ns,
                               const SolveOptions& opts) {
  if (!kernel.is_riesz()) throw std::invalid_argument("asymptotics: needs a Riesz kernel");
  if (ns.empty()) throw std::invalid_argument("asymptotics: empty N list");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 2) throw std::invalid_argument("asymptotics: every N must be >= 2");
    if (i > 0 && ns[i] <= ns[i - 1]) throw std::invalid_argument("asymptotics: N list must be strictly increasing");
  }
  AsymptoticRun run;
  run.s = kernel.riesz_s();
  run.d = d;
  for (int n : ns) {
    SolveResult solved;
    try {
      solved = maximize_polarization(kernel, A, n, opts);
    } catch (const std::exception& e) {
      run.complete = false;
      run.error = "N=" + std::to_string(n) + ": " + e.what();
      break;
    }
    if (!solved.success) {
      run.complete = false;
      run.error = "N=" + std::to_string(n) + ": " + solved.message;
      break;
    }
    run.ns.push_back(n);
    run.values.push_back(solved.report.value);
    run.taus.push_back(tau(run.s, d, n));
    run.ratios.push_back(solved.report.value / run.taus.back());
  }
  if (!run.ratios.empty()) {
    const std::size_t first = run.ratios.size() > 3 ? run.ratios.size() - 3 : 0;
    std::vector<double> x, y;
    for (std::size_t i = first; i < run.ratios.size(); ++i) {
      x.push_back(1.0 / run.ns[i]);
      y.push_back(run.ratios[i]);
    }
    std::tie(run.intercept, run.slope) = affine_fit(x, y);
  }
  return run;
}

}  // namespace polarmax

#include "polarmax/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polarmax {

namespace {

// B_{2k} / (2k)! for k = 1..10.
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
};

constexpr int kDirectTerms = 24;

}  // namespace

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0)) throw std::domain_error("zeta: need s > 1");
  if (!(a > 0.0)) throw std::domain_error("zeta: need a > 0");
  double head = 0.0;
  for (int n = kDirectTerms - 1; n >= 0; --n) head += std::pow(n + a, -s);
  const double x = kDirectTerms + a;
  double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  // rising = s (s+1) ... (s+2k-2), power = x^(-s-2k+1)
  double rising = s;
  double power = std::pow(x, -s - 1.0);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    tail += kBernoulliOverFactorial[k] * rising * power;
    const double j = 2.0 * static_cast<double>(k) + 1.0;
    rising *= (s + j) * (s + j + 1.0);
    power /= x * x;
  }
  return head + tail;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

double unit_ball_volume(double d) {
  if (!(d > 0)) throw std::domain_error("unit_ball_volume: need d > 0");
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

}  // namespace polarmax

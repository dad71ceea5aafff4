#include "core/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "core/errors.hpp"

namespace minkflow {

double pairwise_sum(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

namespace {

GaussRule build_gauss_rule(int order) {
  if (order < 2) throw InvalidArgumentError("Gauss rule order must be >= 2");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double n = order;
  for (int i = 0; i < (order + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev-based initial guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_gauss_rule(order)).first;
  return it->second;
}

double ChebyshevProxy::eval(double x) const {
  const double t = (2.0 * x - a_ - b_) / (b_ - a_);
  double b0 = 0.0, b1 = 0.0;
  for (std::size_t k = coef_.size(); k-- > 1;) {
    const double b2 = b1;
    b1 = b0;
    b0 = 2.0 * t * b1 - b2 + coef_[k];
  }
  return t * b0 - b1 + coef_[0];
}

PeriodicPchip::PeriodicPchip(std::vector<double> xs, std::vector<double> ys, double period,
                             double dy_per_period)
    : xs_(std::move(xs)), ys_(std::move(ys)), period_(period), dy_(dy_per_period) {
  const std::size_t n = xs_.size();
  if (n < 4 || ys_.size() != n) throw InvalidArgumentError("interpolation table too short");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(xs_[i + 1] > xs_[i])) throw InvalidArgumentError("interpolation abscissae not increasing");
  if (!(xs_[n - 1] - xs_[0] < period_))
    throw InvalidArgumentError("interpolation table spans more than one period");

  // secants with periodic wraparound
  std::vector<double> dx(n), sec(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double w = (j == 0) ? period_ : 0.0;
    dx[i] = xs_[j] + w - xs_[i];
    sec[i] = (ys_[j] + (j == 0 ? dy_ : 0.0) - ys_[i]) / dx[i];
  }
  slopes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const double d0 = sec[prev], d1 = sec[i];
    if (d0 * d1 <= 0.0) {
      slopes_[i] = 0.0;
    } else {
      const double w1 = 2.0 * dx[i] + dx[prev];
      const double w2 = dx[i] + 2.0 * dx[prev];
      slopes_[i] = (w1 + w2) / (w1 / d0 + w2 / d1);
    }
  }
}

double PeriodicPchip::eval(double x) const {
  const std::size_t n = xs_.size();
  // shift x into [xs_[0], xs_[0] + period)
  double shift_y = 0.0;
  double t = std::fmod(x - xs_[0], period_);
  if (t < 0.0) t += period_;
  shift_y = (x - xs_[0] - t) / period_ * dy_;
  t += xs_[0];

  std::size_t lo = std::upper_bound(xs_.begin(), xs_.end(), t) - xs_.begin();
  lo = (lo == 0) ? n - 1 : lo - 1;
  const std::size_t hi = (lo + 1) % n;
  const double w = (hi == 0) ? period_ : 0.0;
  const double h = xs_[hi] + w - xs_[lo];
  const double y0 = ys_[lo], y1 = ys_[hi] + (hi == 0 ? dy_ : 0.0);
  const double s = (t - xs_[lo]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return shift_y + h00 * y0 + h10 * h * slopes_[lo] + h01 * y1 + h11 * h * slopes_[hi];
}

}  // namespace minkflow

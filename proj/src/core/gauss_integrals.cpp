#include "core/gauss_integrals.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "core/convex_body.hpp"
#include "core/errors.hpp"
#include "core/polygon.hpp"

namespace minkflow {

namespace {

constexpr double kTailAbsTol = 1e-13;

double integrand(double r, double q) { return std::exp(-0.5 * r * r) * std::pow(r, q - 1.0); }

// On [lo, hi] with lo near zero and q < 1 the integrand blows up at the left
// endpoint; the substitution t = r^q gives a bounded integrand.  At q = 0
// that substitution degenerates (t is identically one), so integrate in
// t = log r instead, where the integrand is bounded by one.
double singular_piece(double lo, double hi, double q) {
  if (q == 0.0) {
    auto g = [](double t) { return std::exp(-0.5 * std::exp(2.0 * t)); };
    return adaptive_simpson(g, std::log(lo), std::log(hi), kTailAbsTol);
  }
  const double tlo = std::pow(lo, q), thi = std::pow(hi, q);
  auto g = [q](double t) { return std::exp(-0.5 * std::pow(t, 2.0 / q)) / q; };
  return adaptive_simpson(g, tlo, thi, kTailAbsTol);
}

}  // namespace

double tail_integral(double s, double q) {
  if (s < 0.0 || !std::isfinite(s)) throw DomainError("tail integral needs s >= 0");
  if (s == 0.0 && q <= 0.0) throw DomainError("tail integral diverges at s = 0 for q <= 0");

  if (s >= 2.0) {
    // Far from zero the raw integrand underflows the absolute tolerance;
    // substituting r = s(1 + x/s) factors out the exponentially small scale:
    //   integral = exp(-s^2/2) s^(q-1) * int_0^inf exp(-sx - x^2/2)(1 + x/s)^(q-1) dx
    // and the remaining integral is O(1/s), computed to full relative accuracy.
    auto g = [s, q](double x) {
      return std::exp(-s * x - 0.5 * x * x) * std::pow(1.0 + x / s, q - 1.0);
    };
    const double scaled = adaptive_simpson(g, 0.0, 100.0 / s, kTailAbsTol / s);
    return std::exp(-0.5 * s * s) * std::pow(s, q - 1.0) * scaled;
  }

  double r_max = std::max(s, 1.0) + 12.0;
  while (integrand(r_max, q) > 1e-18) r_max += 4.0;

  const double split = 0.5;
  if (q < 1.0 && s < split) {
    return singular_piece(s, split, q) +
           adaptive_simpson([q](double r) { return integrand(r, q); }, split, r_max, kTailAbsTol);
  }
  return adaptive_simpson([q](double r) { return integrand(r, q); }, s, r_max, kTailAbsTol);
}

double radial_antiderivative(double r, double q) { return -tail_integral(r, q); }

double support_antiderivative(double t, double p) {
  if (!(t > 0.0)) throw DomainError("support antiderivative needs t > 0");
  if (p == 0.0) return std::log(t);
  return std::pow(t, p) / p;
}

TailEvaluator::TailEvaluator(double q) : q_(q) {
  static const double bounds[] = {0.02, 0.04, 0.08, 0.16, 0.35, 0.75, 1.5, 3.0, 6.0, 14.0};
  constexpr int degree = 64;
  const std::size_t pieces = sizeof(bounds) / sizeof(bounds[0]) - 1;
  pieces_.reserve(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    // The tail spans dozens of decades, so the proxy stores the slowly varying
    // ratio to exp(-s^2/2) s^(q-2); eval() multiplies the scale back in.  That
    // keeps the approximation relatively accurate instead of just absolutely.
    pieces_.push_back(ChebyshevProxy::fit(
        [q](double s) {
          return tail_integral(s, q) * std::exp(0.5 * s * s) * std::pow(s, 2.0 - q);
        },
        bounds[i], bounds[i + 1], degree));
  }
}

double TailEvaluator::operator()(double s) const {
  if (s < pieces_.front().lo() || s > pieces_.back().hi()) return tail_integral(s, q_);
  for (const ChebyshevProxy& p : pieces_)
    if (s <= p.hi()) return p.eval(s) * std::exp(-0.5 * s * s) * std::pow(s, q_ - 2.0);
  return tail_integral(s, q_);
}

std::shared_ptr<const TailEvaluator> tail_evaluator(double q) {
  static std::mutex mutex;
  static std::map<double, std::shared_ptr<const TailEvaluator>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const TailEvaluator>(q);
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(q, std::move(built));
  (void)inserted;
  return it->second;
}

double quermassintegral(const ConvexBody& body, double q) {
  const std::size_t n = body.size();
  const auto F = tail_evaluator(q);
  const GridFunction& h = body.support();
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho2 = h[i] * h[i] + body.d1()[i] * body.d1()[i];
    const double rho = std::sqrt(rho2);
    // du = (h * b / rho^2) d(theta): Jacobian of the normal-angle chart
    terms[i] = (*F)(rho)*h[i] * body.curvature_b(i) / rho2;
  }
  return pairwise_sum(terms) * h.delta_theta();
}

double quermassintegral(const Polygon& poly, double q) {
  const auto F = tail_evaluator(q);
  const std::size_t m = poly.size();
  std::vector<double> arcs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u0 = poly.vertex_angle(i);
    const double u1 = poly.vertex_angle_next(i);
    const double gamma = poly.edge_normal_angle(i);
    const double d = poly.edge_support(i);
    auto f = [&](double u) { return (*F)(d / std::cos(u - gamma)); };
    double value = gauss_integrate(f, u0, u1, 16);
    for (int order = 32; order <= 128; order *= 2) {
      const double refined = gauss_integrate(f, u0, u1, order);
      const double delta = std::abs(refined - value);
      value = refined;
      if (delta <= 1e-13 * (1.0 + std::abs(refined))) break;
    }
    arcs[i] = value;
  }
  return pairwise_sum(arcs);
}

}  // namespace minkflow

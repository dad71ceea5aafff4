#include "core/convex_body.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "core/errors.hpp"

namespace minkflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_support(const GridFunction& h, const std::vector<double>& d2, double eps) {
  if (!(h.min_value() > 0.0)) throw NotPositiveError("support function must be strictly positive");
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double b = d2[i] + h[i];
    if (!(b > eps))
      throw NotConvexError("curvature h'' + h = " + std::to_string(b) + " at theta index " +
                           std::to_string(i) + " (margin " + std::to_string(eps) + ")");
  }
}

}  // namespace

double ConvexBody::default_convexity_margin(const GridFunction& h) {
  return 1e-8 * h.max_value();
}

ConvexBody::ConvexBody(GridFunction h, double eps_convex) : h_(std::move(h)) {
  spectral_derivatives(h_.values(), d1_, d2_);
  const double eps = eps_convex < 0.0 ? default_convexity_margin(h_) : eps_convex;
  check_support(h_, d2_, eps);

  const std::size_t n = h_.size();
  min_b_ = d2_[0] + h_[0];
  for (std::size_t i = 1; i < n; ++i) min_b_ = std::min(min_b_, d2_[i] + h_[i]);

  // direction table seeding the inverse of the normal map
  std::vector<double> alpha(n), th(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = direction_angle(i);
    th[i] = h_.theta(i);
    if (i > 0 && !(alpha[i] > alpha[i - 1]))
      throw NotConvexError("boundary direction map is not strictly increasing");
  }
  if (!(alpha[n - 1] - alpha[0] < kTwoPi))
    throw NotConvexError("boundary direction map winds more than once");
  normal_table_ = std::make_unique<PeriodicPchip>(std::move(alpha), std::move(th), kTwoPi, kTwoPi);
  interp_ = std::make_unique<TrigInterpolant>(h_);
}

std::array<double, 2> ConvexBody::boundary_point(std::size_t i) const {
  const double c = std::cos(h_.theta(i)), s = std::sin(h_.theta(i));
  return {h_[i] * c - d1_[i] * s, h_[i] * s + d1_[i] * c};
}

double ConvexBody::rho_at_normal(std::size_t i) const {
  return std::hypot(h_[i], d1_[i]);
}

double ConvexBody::direction_angle(std::size_t i) const {
  // boundary point is h*u + h' * u_perp, so it sits at angle theta + atan2(h', h)
  return h_.theta(i) + std::atan2(d1_[i], h_[i]);
}

double ConvexBody::radial(double u) const {
  double h, dh, d2h;
  interp_->eval_jet(normal_angle(u), h, dh, d2h);
  return std::hypot(h, dh);
}

double ConvexBody::normal_angle(double u) const {
  // The boundary point with normal angle xi sits at polar angle
  // psi(xi) = xi + atan2(h', h), and psi' = h * b / rho^2 > 0.  The cubic
  // table lands within O(dtheta^3); Newton polishes to roundoff.
  double xi = normal_table_->eval(u);
  for (int iter = 0; iter < 8; ++iter) {
    double h, dh, d2h;
    interp_->eval_jet(xi, h, dh, d2h);
    const double deriv = h * (h + d2h) / (h * h + dh * dh);
    if (!(deriv > 0.0)) break;
    const double step = (xi + std::atan2(dh, h) - u) / deriv;
    xi -= step;
    if (std::abs(step) < 1e-14) break;
  }
  return xi;
}

void certify_convex(const GridFunction& h, double eps_convex) {
  std::vector<double> d1, d2;
  spectral_derivatives(h.values(), d1, d2);
  const double eps = eps_convex < 0.0 ? ConvexBody::default_convexity_margin(h) : eps_convex;
  check_support(h, d2, eps);
}

}  // namespace minkflow

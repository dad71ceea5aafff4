#include "core/dual_measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "core/errors.hpp"
#include "core/gauss_integrals.hpp"

namespace minkflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double t = std::fmod(a, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}
}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<double> directions, std::vector<double> weights) {
  if (directions.empty() || directions.size() != weights.size())
    throw InvalidArgumentError("measure needs matching, non-empty direction/weight lists");
  std::vector<std::size_t> order(directions.size());
  std::iota(order.begin(), order.end(), 0);
  for (double& d : directions) d = wrap_angle(d);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return directions[a] < directions[b]; });
  dirs_.reserve(order.size());
  w_.reserve(order.size());
  for (std::size_t i : order) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw InvalidArgumentError("measure weights must be positive and finite");
    dirs_.push_back(directions[i]);
    w_.push_back(weights[i]);
  }
}

double DiscreteMeasure::total() const { return pairwise_sum(w_); }

bool DiscreteMeasure::is_even(double tol) const {
  for (std::size_t i = 0; i < dirs_.size(); ++i) {
    const double anti = wrap_angle(dirs_[i] + std::numbers::pi);
    bool found = false;
    for (std::size_t j = 0; j < dirs_.size(); ++j) {
      double gap = std::abs(dirs_[j] - anti);
      gap = std::min(gap, kTwoPi - gap);
      if (gap <= tol && std::abs(w_[j] - w_[i]) <= tol * std::max(1.0, std::abs(w_[i]))) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool DiscreteMeasure::is_spread(double tol) const {
  if (dirs_.size() < 2) return false;
  double max_gap = dirs_.front() + kTwoPi - dirs_.back();
  for (std::size_t i = 0; i + 1 < dirs_.size(); ++i)
    max_gap = std::max(max_gap, dirs_[i + 1] - dirs_[i]);
  return max_gap < std::numbers::pi - tol;
}

GridFunction measure_density(const ConvexBody& body, Exponents e) {
  const std::size_t n = body.size();
  const GridFunction& h = body.support();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho2 = h[i] * h[i] + body.d1()[i] * body.d1()[i];
    out[i] = std::exp(-0.5 * rho2) * std::pow(h[i], 1.0 - e.p) *
             std::pow(rho2, 0.5 * (e.q - 2.0)) * body.curvature_b(i);
  }
  return GridFunction(std::move(out));
}

namespace {

double edge_weight(const Polygon& poly, std::size_t i, Exponents e) {
  const Vec2& a = poly.vertex(i);
  const Vec2& b = poly.vertex((i + 1) % poly.size());
  const double len = poly.edge_length(i);
  const double d = poly.edge_support(i);
  auto f = [&](double t) {
    const double x = a.x + t * (b.x - a.x);
    const double y = a.y + t * (b.y - a.y);
    const double r2 = x * x + y * y;
    return std::exp(-0.5 * r2) * std::pow(r2, 0.5 * (e.q - 2.0));
  };
  double value = gauss_integrate(f, 0.0, 1.0, 64);
  for (int order = 128; order <= 1024; order *= 2) {
    const double refined = gauss_integrate(f, 0.0, 1.0, order);
    const double delta = std::abs(refined - value);
    value = refined;
    if (delta <= 1e-12 * std::abs(refined)) break;
  }
  return len * std::pow(d, 1.0 - e.p) * value;
}

}  // namespace

DiscreteMeasure measure_of_polygon(const Polygon& poly, Exponents e) {
  const std::size_t m = poly.size();
  std::vector<double> dirs(m), w(m);
  for (std::size_t i = 0; i < m; ++i) {
    dirs[i] = wrap_angle(poly.edge_normal_angle(i));
    w[i] = edge_weight(poly, i, e);
  }
  return DiscreteMeasure(std::move(dirs), std::move(w));
}

double total_mass(const GridFunction& density) {
  return pairwise_sum(density.values()) * density.delta_theta();
}

double total_mass(const DiscreteMeasure& mu) { return mu.total(); }

namespace {

void check_positive_density(const GridFunction& f) {
  if (!(f.min_value() > 0.0)) throw NotPositiveError("target density must be strictly positive");
}

// (h^p + t f^p)^(1/p) on the grid; throws StepTooLarge when the p-sum leaves
// the positive cone.
GridFunction p_sum_perturbation(const std::vector<double>& h, const GridFunction& f, double p,
                                double t) {
  std::vector<double> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double g = std::pow(h[i], p) + t * std::pow(f[i], p);
    if (!(g > 0.0))
      throw StepTooLargeError("perturbation step leaves the cone of positive support data");
    out[i] = std::pow(g, 1.0 / p);
  }
  return GridFunction(std::move(out));
}

double quermassintegral_of_data(const GridFunction& h_t, double q) {
  // Smooth data stays a support function for small steps; fall back to the
  // polygonal Wulff shape when convexity is lost.
  try {
    return quermassintegral(ConvexBody(h_t), q);
  } catch (const NotConvexError&) {
    return quermassintegral(wulff_shape(h_t), q);
  }
}

VariationalCheck finish_check(double lhs, double rhs) {
  VariationalCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.rel_gap = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
  return c;
}

}  // namespace

VariationalCheck verify_variational_formula(const ConvexBody& body, const GridFunction& f,
                                            Exponents e, double t_step) {
  if (body.size() != f.size()) throw InvalidArgumentError("body and density grids differ in size");
  check_positive_density(f);
  if (e.p == 0.0) throw DomainError("difference quotient needs p != 0");
  if (!(t_step > 0.0)) throw StepTooLargeError("t_step must be positive");

  const GridFunction plus = p_sum_perturbation(body.support().values(), f, e.p, t_step);
  const GridFunction minus = p_sum_perturbation(body.support().values(), f, e.p, -t_step);
  const double lhs =
      (quermassintegral_of_data(plus, e.q) - quermassintegral_of_data(minus, e.q)) / (2.0 * t_step);

  const GridFunction density = measure_density(body, e);
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) terms[i] = std::pow(f[i], e.p) * density[i];
  const double rhs = -pairwise_sum(terms) * f.delta_theta() / e.p;
  return finish_check(lhs, rhs);
}

VariationalCheck verify_variational_formula(const Polygon& poly, const GridFunction& f, Exponents e,
                                            double t_step) {
  check_positive_density(f);
  if (e.p == 0.0) throw DomainError("difference quotient needs p != 0");
  if (!(t_step > 0.0)) throw StepTooLargeError("t_step must be positive");

  const GridFunction h = poly.support_grid(f.size());
  const GridFunction plus = p_sum_perturbation(h.values(), f, e.p, t_step);
  const GridFunction minus = p_sum_perturbation(h.values(), f, e.p, -t_step);
  const double lhs =
      (quermassintegral(wulff_shape(plus), e.q) - quermassintegral(wulff_shape(minus), e.q)) /
      (2.0 * t_step);

  const DiscreteMeasure mu = measure_of_polygon(poly, e);
  const TrigInterpolant fi(f);
  std::vector<double> terms(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j)
    terms[j] = std::pow(fi.eval(mu.direction(j)), e.p) * mu.weight(j);
  const double rhs = -pairwise_sum(terms) / e.p;
  return finish_check(lhs, rhs);
}

namespace {

std::vector<ConvergenceRow> convergence_rows(const std::vector<std::size_t>& refinements,
                                             const GridFunction& test_fn, double limit,
                                             const std::function<double(double)>& support_at,
                                             Exponents e) {
  const TrigInterpolant ti(test_fn);
  std::vector<ConvergenceRow> rows;
  rows.reserve(refinements.size());
  for (std::size_t m : refinements) {
    validate_grid_size(m);
    std::vector<double> samples(m);
    for (std::size_t j = 0; j < m; ++j) samples[j] = support_at(kTwoPi * j / m);
    const Polygon tangent = wulff_shape(GridFunction(std::move(samples)));
    const DiscreteMeasure mu = measure_of_polygon(tangent, e);
    std::vector<double> terms(mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j) terms[j] = ti.eval(mu.direction(j)) * mu.weight(j);
    const double value = pairwise_sum(terms);
    rows.push_back({m, value, std::abs(value - limit)});
  }
  return rows;
}

}  // namespace

std::vector<ConvergenceRow> weak_convergence_study(const ConvexBody& target,
                                                   const GridFunction& test_fn, Exponents e,
                                                   const std::vector<std::size_t>& refinements) {
  if (target.size() != test_fn.size())
    throw InvalidArgumentError("target body and test function grids differ in size");
  const GridFunction density = measure_density(target, e);
  std::vector<double> terms(test_fn.size());
  for (std::size_t i = 0; i < test_fn.size(); ++i) terms[i] = test_fn[i] * density[i];
  const double limit = pairwise_sum(terms) * test_fn.delta_theta();

  const TrigInterpolant hi(target.support());
  const std::size_t n = target.size();
  auto support_at = [&, n](double th) {
    // exact sample when the tangent direction lies on the grid
    const double pos = th / kTwoPi * static_cast<double>(n);
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-12)
      return target.support()[static_cast<std::size_t>(nearest) % n];
    return hi.eval(th);
  };
  return convergence_rows(refinements, test_fn, limit, support_at, e);
}

std::vector<ConvergenceRow> weak_convergence_study(const Polygon& target,
                                                   const GridFunction& test_fn, Exponents e,
                                                   const std::vector<std::size_t>& refinements) {
  const DiscreteMeasure mu = measure_of_polygon(target, e);
  const TrigInterpolant ti(test_fn);
  std::vector<double> terms(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) terms[j] = ti.eval(mu.direction(j)) * mu.weight(j);
  const double limit = pairwise_sum(terms);
  auto support_at = [&](double th) { return target.support(th); };
  return convergence_rows(refinements, test_fn, limit, support_at, e);
}

}  // namespace minkflow

#pragma once

#include <cstddef>
#include <vector>

#include "core/convex_body.hpp"
#include "core/grid_function.hpp"
#include "core/polygon.hpp"

namespace minkflow {

// Exponent pair of the weighted curvature measure; the ambient dimension is 2.
struct Exponents {
  double p = 0.0;
  double q = 0.0;
};

// Atomic measure on directions of the circle; directions normalized to
// [0, 2*pi) and sorted, weights > 0.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<double> directions, std::vector<double> weights);

  std::size_t size() const { return dirs_.size(); }
  double direction(std::size_t i) const { return dirs_[i]; }
  double weight(std::size_t i) const { return w_[i]; }
  const std::vector<double>& directions() const { return dirs_; }
  const std::vector<double>& weights() const { return w_; }

  double total() const;
  // Antipode-symmetric within tolerance (pairs theta <-> theta + pi with
  // equal weights).
  bool is_even(double tol = 1e-9) const;
  // True when no closed half circle contains every direction, i.e. the
  // largest cyclic gap between consecutive directions is below pi.
  bool is_spread(double tol = 1e-12) const;

 private:
  std::vector<double> dirs_, w_;
};

// Spherical density of the weighted curvature measure with respect to the
// normal angle:  exp(-(h'^2+h^2)/2) * h^(1-p) * (h'^2+h^2)^((q-2)/2) * (h''+h).
GridFunction measure_density(const ConvexBody& body, Exponents e);

// One atom per polygon edge, sitting at the edge normal, with the boundary
// integral of (x.nu)^(1-p) exp(-|x|^2/2) |x|^(q-2) over the edge as weight.
// Gauss-Legendre per edge, 64 nodes, doubled until 1e-12 relative.
DiscreteMeasure measure_of_polygon(const Polygon& poly, Exponents e);

double total_mass(const GridFunction& density);
double total_mass(const DiscreteMeasure& mu);

// Two-sided difference quotient of the quermassintegral along the p-sum
// perturbation (h^p + t f^p)^{1/p} against the measure-side prediction
// -(1/p) * integral of f^p against the curvature measure.
struct VariationalCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_gap = 0.0;
};
VariationalCheck verify_variational_formula(const ConvexBody& body, const GridFunction& f,
                                            Exponents e, double t_step);
VariationalCheck verify_variational_formula(const Polygon& poly, const GridFunction& f, Exponents e,
                                            double t_step);

// Integrates test_fn against the measures of tangent polygons cut at m
// equally spaced normals, reporting the drift toward the target's value.
struct ConvergenceRow {
  std::size_t m = 0;
  double value = 0.0;
  double error = 0.0;
};
std::vector<ConvergenceRow> weak_convergence_study(const ConvexBody& target,
                                                   const GridFunction& test_fn, Exponents e,
                                                   const std::vector<std::size_t>& refinements);
std::vector<ConvergenceRow> weak_convergence_study(const Polygon& target,
                                                   const GridFunction& test_fn, Exponents e,
                                                   const std::vector<std::size_t>& refinements);

}  // namespace minkflow

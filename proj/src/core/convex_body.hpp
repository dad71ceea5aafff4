#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "core/grid_function.hpp"
#include "core/quadrature.hpp"

namespace minkflow {

// Strictly convex body described by support samples h on the normal-angle
// grid.  Construction certifies h > 0 and curvature b = h'' + h > eps_convex
// (spectral derivatives); eps_convex < 0 selects the scale-aware default
// 1e-8 * max h.
class ConvexBody {
 public:
  explicit ConvexBody(GridFunction h, double eps_convex = -1.0);

  static double default_convexity_margin(const GridFunction& h);

  std::size_t size() const { return h_.size(); }
  const GridFunction& support() const { return h_; }
  const std::vector<double>& d1() const { return d1_; }
  const std::vector<double>& d2() const { return d2_; }
  double curvature_b(std::size_t i) const { return d2_[i] + h_[i]; }
  double min_curvature() const { return min_b_; }

  // Boundary point with outward normal angle theta_i.
  std::array<double, 2> boundary_point(std::size_t i) const;
  // Distance from the origin to that boundary point.
  double rho_at_normal(std::size_t i) const;
  // Polar angle of that boundary point (strictly increasing in i).
  double direction_angle(std::size_t i) const;

  // Radial function at an arbitrary direction.
  double radial(double u) const;
  // Normal angle of the boundary point the ray of direction u hits (inverse
  // of direction_angle).  A monotone cubic table seeds a Newton solve on the
  // trigonometric interpolant of h, so the answer is accurate to roundoff.
  double normal_angle(double u) const;

 private:
  GridFunction h_;
  std::vector<double> d1_, d2_;
  double min_b_ = 0.0;
  std::unique_ptr<PeriodicPchip> normal_table_;
  std::unique_ptr<TrigInterpolant> interp_;
};

// Validates without keeping the body.  Throws NotPositiveError /
// NotConvexError like the constructor.
void certify_convex(const GridFunction& h, double eps_convex = -1.0);

}  // namespace minkflow

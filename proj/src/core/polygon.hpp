#pragma once

#include <cstddef>
#include <vector>

#include "core/grid_function.hpp"

namespace minkflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// Vertices closer than this are treated as one point when polygons are built
// from half-plane intersections.
constexpr double kVertexMergeTol = 1e-12;

// Convex polygon with CCW vertices, strictly convex corners, origin strictly
// interior.  Edge i runs vertex(i) -> vertex(i+1 mod m) with outward normal.
class Polygon {
 public:
  explicit Polygon(std::vector<Vec2> vertices);

  std::size_t size() const { return v_.size(); }
  const Vec2& vertex(std::size_t i) const { return v_[i]; }
  const std::vector<Vec2>& vertices() const { return v_; }

  double support(double theta) const;
  GridFunction support_grid(std::size_t n) const;

  // Exact ray cast from the origin.
  double radial(double u) const;

  double edge_normal_angle(std::size_t i) const { return nangle_[i]; }
  double edge_support(std::size_t i) const { return nsupport_[i]; }
  double edge_length(std::size_t i) const { return elen_[i]; }

  // Polar angle of vertex i, unwrapped so the sequence increases with i and
  // spans exactly 2*pi.  vertex_angle_next(i) is the angle of vertex i+1 on
  // the same branch, so [vertex_angle(i), vertex_angle_next(i)] is the fan of
  // ray directions that hit edge i.
  double vertex_angle(std::size_t i) const { return vangle_[i]; }
  double vertex_angle_next(std::size_t i) const;

 private:
  std::vector<Vec2> v_;
  std::vector<double> vangle_, nangle_, nsupport_, elen_;
};

// Merges runs of nearly coincident vertices (tolerance in absolute distance).
std::vector<Vec2> merge_close_vertices(const std::vector<Vec2>& vs, double tol = kVertexMergeTol);

// Polar dual: vertices of the dual are edge_normal / edge_support.  Involutive
// on valid polygons.
Polygon polar_body(const Polygon& p);

// Intersection of the half planes {x . u_i <= f(theta_i)}, computed as the
// polar of the convex hull of the points u_i / f(theta_i).  f must be
// strictly positive.
Polygon wulff_shape(const GridFunction& f);

}  // namespace minkflow

#include "core/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "core/errors.hpp"

namespace minkflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Polygon::Polygon(std::vector<Vec2> vertices) : v_(std::move(vertices)) {
  const std::size_t m = v_.size();
  if (m < 3) throw InvalidArgumentError("polygon needs at least 3 vertices");

  nangle_.resize(m);
  nsupport_.resize(m);
  elen_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = v_[i];
    const Vec2& b = v_[(i + 1) % m];
    const Vec2 e{b.x - a.x, b.y - a.y};
    const double len = std::hypot(e.x, e.y);
    if (len <= kVertexMergeTol)
      throw DegenerateEdgeError("polygon edge " + std::to_string(i) + " has near-zero length");
    elen_[i] = len;
    // outward normal of a CCW edge
    const Vec2 n{e.y / len, -e.x / len};
    nangle_[i] = std::atan2(n.y, n.x);
    nsupport_[i] = dot(n, a);
    if (!(nsupport_[i] > 0.0))
      throw InvalidArgumentError("origin is not strictly interior to the polygon");
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = v_[i];
    const Vec2& b = v_[(i + 1) % m];
    const Vec2& c = v_[(i + 2) % m];
    const Vec2 e1{b.x - a.x, b.y - a.y};
    const Vec2 e2{c.x - b.x, c.y - b.y};
    if (!(cross(e1, e2) > 0.0))
      throw NotConvexError("polygon is not strictly convex (CCW) at vertex " +
                           std::to_string((i + 1) % m));
  }

  vangle_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double a = std::atan2(v_[i].y, v_[i].x);
    if (i > 0) {
      while (a < vangle_[i - 1]) a += kTwoPi;
    }
    vangle_[i] = a;
  }
  if (vangle_[m - 1] - vangle_[0] >= kTwoPi)
    throw NotConvexError("polygon winds more than once around the origin");
}

double Polygon::vertex_angle_next(std::size_t i) const {
  return (i + 1 < v_.size()) ? vangle_[i + 1] : vangle_[0] + kTwoPi;
}

double Polygon::support(double theta) const {
  const Vec2 u{std::cos(theta), std::sin(theta)};
  double best = dot(u, v_[0]);
  for (std::size_t i = 1; i < v_.size(); ++i) best = std::max(best, dot(u, v_[i]));
  return best;
}

GridFunction Polygon::support_grid(std::size_t n) const {
  validate_grid_size(n);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i)
    h[i] = support(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
  return GridFunction(std::move(h));
}

double Polygon::radial(double u) const {
  const std::size_t m = v_.size();
  double t = std::fmod(u - vangle_[0], kTwoPi);
  if (t < 0.0) t += kTwoPi;
  t += vangle_[0];
  std::size_t lo = std::upper_bound(vangle_.begin(), vangle_.end(), t) - vangle_.begin();
  lo = (lo == 0) ? m - 1 : lo - 1;
  return nsupport_[lo] / std::cos(t - nangle_[lo]);
}

std::vector<Vec2> merge_close_vertices(const std::vector<Vec2>& vs, double tol) {
  std::vector<Vec2> out;
  for (const Vec2& v : vs) {
    if (!out.empty() && std::hypot(v.x - out.back().x, v.y - out.back().y) <= tol) continue;
    out.push_back(v);
  }
  while (out.size() > 1 &&
         std::hypot(out.front().x - out.back().x, out.front().y - out.back().y) <= tol)
    out.pop_back();
  return out;
}

namespace {

// Sine-of-turn threshold below which a corner counts as collinear.  Kept well
// above double rounding noise so a pruned chain survives the exact strictness
// checks in the Polygon constructor.
constexpr double kTurnSineTol = 1e-12;

// Removes near-zero edges and near-collinear corners from a CCW chain until
// both properties hold simultaneously.  May shrink the chain below 3 vertices;
// callers decide whether that is an error.
std::vector<Vec2> prune_degenerate_ccw(std::vector<Vec2> vs) {
  bool changed = true;
  while (changed && vs.size() >= 3) {
    vs = merge_close_vertices(vs);
    if (vs.size() < 3) break;
    changed = false;
    std::vector<Vec2> out;
    out.reserve(vs.size());
    const std::size_t m = vs.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2& a = vs[(i + m - 1) % m];
      const Vec2& b = vs[i];
      const Vec2& c = vs[(i + 1) % m];
      const Vec2 e1{b.x - a.x, b.y - a.y};
      const Vec2 e2{c.x - b.x, c.y - b.y};
      const double scale = std::hypot(e1.x, e1.y) * std::hypot(e2.x, e2.y);
      if (cross(e1, e2) <= kTurnSineTol * scale) {
        changed = true;
        continue;
      }
      out.push_back(b);
    }
    vs = std::move(out);
  }
  return vs;
}

}  // namespace

Polygon polar_body(const Polygon& p) {
  const std::size_t m = p.size();
  std::vector<Vec2> dual;
  dual.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = p.edge_support(i);
    if (d <= kVertexMergeTol)
      throw DegenerateEdgeError("edge too close to the origin for the polar dual");
    const double a = p.edge_normal_angle(i);
    dual.push_back({std::cos(a) / d, std::sin(a) / d});
  }
  dual = prune_degenerate_ccw(std::move(dual));
  if (dual.size() < 3) throw EmptyInteriorError("polar dual degenerates");
  return Polygon(std::move(dual));
}

namespace {

// Andrew monotone chain; returns a strictly convex CCW hull.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) throw EmptyInteriorError("half-plane intersection degenerates");
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  const auto turns_left = [](const Vec2& a, const Vec2& b, const Vec2& c) {
    const Vec2 e1{b.x - a.x, b.y - a.y};
    const Vec2 e2{c.x - a.x, c.y - a.y};
    return cross(e1, e2) > kTurnSineTol * std::hypot(e1.x, e1.y) * std::hypot(e2.x, e2.y);
  };
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && !turns_left(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw EmptyInteriorError("half-plane intersection degenerates");
  return hull;
}

}  // namespace

Polygon wulff_shape(const GridFunction& f) {
  const std::size_t n = f.size();
  if (!(f.min_value() > 0.0)) throw NotPositiveError("Wulff data must be strictly positive");
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = f.theta(i);
    pts[i] = {std::cos(th) / f[i], std::sin(th) / f[i]};
  }
  std::vector<Vec2> hull = prune_degenerate_ccw(convex_hull(std::move(pts)));
  if (hull.size() < 3) throw EmptyInteriorError("half-plane intersection degenerates");
  return polar_body(Polygon(std::move(hull)));
}

}  // namespace minkflow

// Polygon and support-sample body geometry: validation contracts, exact
// square/ellipse identities, polar duality (involution, h * rho_polar = 1),
// Wulff construction (tangent bodies, idempotence).
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "core/convex_body.hpp"
#include "core/errors.hpp"
#include "core/grid_function.hpp"
#include "core/polygon.hpp"
#include "doctest.h"

using namespace minkflow;

namespace {
constexpr double kPi = std::numbers::pi;

GridFunction ellipse_support(std::size_t n, double a, double b) {
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2 * kPi * static_cast<double>(i) / n;
    h[i] = std::sqrt(a * a * std::cos(t) * std::cos(t) + b * b * std::sin(t) * std::sin(t));
  }
  return GridFunction(std::move(h));
}
}  // namespace

TEST_CASE("polygon constructor validates its contract") {
  CHECK_THROWS_AS(Polygon({{1, 0}, {0, 1}}), InvalidArgumentError);
  // clockwise ordering flips every outward normal, so the origin test trips
  CHECK_THROWS_AS(Polygon({{1, 0}, {-1, -1}, {0, 1}}), InvalidArgumentError);
  // reflex corner with the origin still inside every edge half-plane
  CHECK_THROWS_AS(Polygon({{2, 0}, {0.2, 0.2}, {0, 2}, {-2, 0}, {0, -2}}), NotConvexError);
  // origin on the boundary
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {0, 1}}), InvalidArgumentError);
  // origin outside
  CHECK_THROWS_AS(Polygon({{2, 1}, {3, 1}, {3, 2}, {2, 2}}), InvalidArgumentError);
  // repeated vertex: zero-length edge
  CHECK_THROWS_AS(Polygon({{1, 1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}), DegenerateEdgeError);
  // collinear triple is not strictly convex
  CHECK_THROWS_AS(Polygon({{1, -1}, {1, 0}, {1, 1}, {-1, 1}, {-1, -1}}), NotConvexError);
}

TEST_CASE("square support, radial, and edge data") {
  const Polygon sq({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
  CHECK(sq.size() == 4);
  CHECK(sq.support(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sq.support(kPi / 4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sq.support(kPi / 6) ==
        doctest::Approx(std::cos(kPi / 6) + std::sin(kPi / 6)).epsilon(1e-14));
  CHECK(sq.radial(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sq.radial(kPi / 4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sq.radial(kPi / 6) == doctest::Approx(1.0 / std::cos(kPi / 6)).epsilon(1e-14));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(sq.edge_support(i) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sq.edge_length(i) == doctest::Approx(2.0).epsilon(1e-15));
  }
  // vertex fan angles increase strictly and wrap once
  for (std::size_t i = 0; i < 4; ++i) CHECK(sq.vertex_angle_next(i) > sq.vertex_angle(i));
}

TEST_CASE("support grid sampling matches pointwise support") {
  const Polygon sq({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
  const GridFunction h = sq.support_grid(64);
  for (std::size_t i = 0; i < 64; ++i)
    CHECK(h[i] == doctest::Approx(sq.support(h.theta(i))).epsilon(1e-15));
}

TEST_CASE("polar duality on polygons") {
  // polar of the apothem-a square is the diamond with vertices at 1/a
  const Polygon sq({{2, 2}, {-2, 2}, {-2, -2}, {2, -2}});
  const Polygon dia = polar_body(sq);
  CHECK(dia.size() == 4);
  CHECK(dia.support(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dia.radial(kPi / 2) == doctest::Approx(0.5).epsilon(1e-14));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> h(64);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double t = 2 * kPi * static_cast<double>(i) / h.size();
      h[i] = 1.0 + 0.05 * amp(rng) * std::cos(2 * t) + 0.05 * amp(rng) * std::sin(3 * t);
    }
    const Polygon p = wulff_shape(GridFunction(std::move(h)));
    const Polygon pp = polar_body(polar_body(p));
    REQUIRE(pp.size() == p.size());
    // involution returns the same vertex set (same starting vertex up to merge order)
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      double best = 1e300;
      for (std::size_t j = 0; j < pp.size(); ++j) {
        best = std::min(best, std::hypot(p.vertex(i).x - pp.vertex(j).x,
                                         p.vertex(i).y - pp.vertex(j).y));
      }
      worst = std::max(worst, best);
    }
    CHECK(worst < 1e-10);
    // support of the body times radial of the polar is one, in every direction
    for (int k = 0; k < 32; ++k) {
      const double u = 2 * kPi * k / 32 + 0.013;
      CHECK(p.support(u) * polar_body(p).radial(u) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("wulff shape of constant data is the tangent regular polygon") {
  const std::size_t n = 64;
  const Polygon p = wulff_shape(GridFunction::constant(n, 2.0));
  CHECK(p.size() == n);
  // support at grid normals equals the data; vertices sit at 2 / cos(dt/2)
  const double dt = 2 * kPi / static_cast<double>(n);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.edge_support(i) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::hypot(p.vertex(i).x, p.vertex(i).y) ==
          doctest::Approx(2.0 / std::cos(dt / 2)).epsilon(1e-13));
  }
}

TEST_CASE("wulff shape drops dominated half-planes") {
  // support samples of the unit square: only the four axis planes survive
  std::vector<double> h(32);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double t = 2 * kPi * static_cast<double>(i) / h.size();
    h[i] = std::abs(std::cos(t)) + std::abs(std::sin(t));
  }
  const Polygon p = wulff_shape(GridFunction(std::move(h)));
  CHECK(p.size() == 4);
  CHECK(p.support(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.support(kPi / 4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("wulff idempotence on smooth data") {
  const GridFunction h = ellipse_support(256, 1.3, 0.8);
  const Polygon p = wulff_shape(h);
  const GridFunction h1 = p.support_grid(256);
  const Polygon p2 = wulff_shape(h1);
  const GridFunction h2 = p2.support_grid(256);
  for (std::size_t i = 0; i < h1.size(); ++i) CHECK(h2[i] == doctest::Approx(h1[i]).epsilon(1e-12));
}

TEST_CASE("wulff rejects non-positive data") {
  std::vector<double> h(32, 1.0);
  h[5] = 0.0;
  CHECK_THROWS_AS(wulff_shape(GridFunction(std::move(h))), NotPositiveError);
}

TEST_CASE("convex body certification") {
  CHECK_NOTHROW(certify_convex(ellipse_support(128, 1.3, 0.8)));
  // high harmonic with amplitude beyond 1/(k^2-1): curvature goes negative
  std::vector<double> h(128);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double t = 2 * kPi * static_cast<double>(i) / h.size();
    h[i] = 1.0 + 0.2 * std::cos(4 * t);
  }
  CHECK_THROWS_AS(certify_convex(GridFunction(std::move(h))), NotConvexError);
  CHECK_THROWS_AS(certify_convex(GridFunction::constant(64, -1.0)), NotPositiveError);
}

TEST_CASE("convex body geometry of the ellipse") {
  const double a = 1.3, b = 0.8;
  const ConvexBody body(ellipse_support(256, a, b));
  CHECK(body.min_curvature() > 0.0);
  // boundary points satisfy the implicit equation x^2/a^2 + y^2/b^2 = 1
  for (std::size_t i = 0; i < body.size(); i += 7) {
    const std::array<double, 2> pt = body.boundary_point(i);
    CHECK(pt[0] * pt[0] / (a * a) + pt[1] * pt[1] / (b * b) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(body.rho_at_normal(i) == doctest::Approx(std::hypot(pt[0], pt[1])).epsilon(1e-12));
  }
  // radial function of the ellipse in closed form
  for (double u : {0.0, 0.4, 1.9, 3.6, 5.9}) {
    const double want =
        1.0 / std::sqrt(std::cos(u) * std::cos(u) / (a * a) + std::sin(u) * std::sin(u) / (b * b));
    CHECK(body.radial(u) == doctest::Approx(want).epsilon(1e-8));
  }
  // normal_angle inverts direction_angle
  for (std::size_t i = 0; i < body.size(); i += 13) {
    const double u = body.direction_angle(i);
    const double xi = body.normal_angle(u);
    const double want = body.support().theta(i);
    CHECK(std::abs(std::remainder(xi - want, 2 * kPi)) < 1e-8);
  }
  // direction angles increase strictly with the normal index
  for (std::size_t i = 0; i + 1 < body.size(); ++i)
    CHECK(body.direction_angle(i + 1) > body.direction_angle(i));
}

TEST_CASE("disk body is its own radial chart") {
  const ConvexBody disk(GridFunction::constant(64, 1.7));
  for (double u : {0.1, 2.0, 4.4}) {
    CHECK(disk.radial(u) == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(std::abs(std::remainder(disk.normal_angle(u) - u, 2 * kPi)) < 1e-10);
  }
}

TEST_CASE("merge of close vertices collapses runs") {
  const std::vector<Vec2> vs{{1, 0}, {1 + 1e-14, 1e-14}, {0, 1}, {-1, 0}, {0, -1}, {1e-14, -1}};
  const std::vector<Vec2> out = merge_close_vertices(vs, 1e-12);
  CHECK(out.size() == 4);
}

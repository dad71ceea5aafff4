// Support flow: speed formulas against hand-evaluated scalars, the descent
// functional against its closed form at the disk, monotone stepping, and
// convergence to known equilibria (constant data and a manufactured smooth
// target whose density is fed back in).
#include <cmath>
#include <numbers>
#include <vector>

#include "core/convex_body.hpp"
#include "core/dual_measure.hpp"
#include "core/errors.hpp"
#include "core/flow.hpp"
#include "core/grid_function.hpp"
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

TEST_CASE("support speed on concentric disks, p=2 q=1") {
  // for h = r const: speed = r - f r^2 e^{r^2/2}, here with f = e^{-1/2}
  const GridFunction f = GridFunction::constant(64, std::exp(-0.5));
  struct Row {
    double r, want;
  };
  const Row rows[] = {
      {2.0, -15.926756281352259},
      {0.5, 0.32817768030225695},
      {1.5, -2.7035534042225004},
  };
  for (const Row& row : rows) {
    CAPTURE(row.r);
    const ConvexBody disk(GridFunction::constant(64, row.r));
    const GridFunction v = flow_velocity(disk, f, {2.0, 1.0});
    for (std::size_t i = 0; i < v.size(); ++i)
      CHECK(v[i] == doctest::Approx(row.want).epsilon(1e-12));
  }
  // the unit disk is stationary for this data
  const ConvexBody unit(GridFunction::constant(64, 1.0));
  const GridFunction v0 = flow_velocity(unit, f, {2.0, 1.0});
  for (std::size_t i = 0; i < v0.size(); ++i) CHECK(std::abs(v0[i]) < 1e-13);
}

TEST_CASE("radial speed equals rho/h times the support speed") {
  const GridFunction h = ellipse_support(256, 1.25, 0.85);
  const ConvexBody body(h);
  std::vector<double> fv(256);
  for (std::size_t i = 0; i < fv.size(); ++i)
    fv[i] = std::exp(-0.5) * (1.0 + 0.05 * std::cos(2 * h.theta(i)));
  const GridFunction f(std::move(fv));
  const Exponents e{2.0, 1.0};
  const GridFunction vh = flow_velocity(body, f, e);
  const TrigInterpolant vh_interp(vh);
  const TrigInterpolant h_interp(h);
  for (double u : {0.0, 0.7, 1.9, 3.3, 5.1}) {
    const double xi = body.normal_angle(u);
    const double rho = body.radial(u);
    const double want = rho / h_interp.eval(xi) * vh_interp.eval(xi);
    CHECK(radial_velocity(body, f, e, u) == doctest::Approx(want).epsilon(1e-7));
  }
  // on a disk the two speeds coincide
  const ConvexBody disk(GridFunction::constant(64, 0.5));
  const GridFunction fc = GridFunction::constant(64, std::exp(-0.5));
  CHECK(radial_velocity(disk, fc, e, 1.234) ==
        doctest::Approx(0.32817768030225695).epsilon(1e-10));
}

TEST_CASE("descent functional at the unit disk, p=2 q=1") {
  const ConvexBody disk(GridFunction::constant(128, 1.0));
  const GridFunction f = GridFunction::constant(128, std::exp(-0.5));
  // pi e^{-1/2} + 2 pi F_1(1)
  CHECK(lyapunov_value(disk, f, {2.0, 1.0}) ==
        doctest::Approx(4.404230629990172).epsilon(1e-11));
}

TEST_CASE("equation residual on concentric disks") {
  const GridFunction f = GridFunction::constant(64, std::exp(-0.5));
  const ConvexBody disk2(GridFunction::constant(64, 2.0));
  CHECK(ma_residual(disk2, f, {2.0, 1.0}) ==
        doctest::Approx(0.88843491992578509).epsilon(1e-12));
  const ConvexBody unit(GridFunction::constant(64, 1.0));
  CHECK(ma_residual(unit, f, {2.0, 1.0}) < 1e-14);
}

TEST_CASE("flow from off-center data converges to the unit disk") {
  FlowParams params;
  params.exps = {2.0, 1.0};
  params.residual_tol = 1e-8;
  const GridFunction f = GridFunction::constant(64, std::exp(-0.5));
  FlowTrace trace;
  const FlowResult res = run_flow(params, f, GridFunction::constant(64, 1.5), &trace);
  REQUIRE(res.outcome == FlowOutcome::Converged);
  CHECK(res.residual < 1e-8);
  CHECK(res.phi_violations == 0);
  for (std::size_t i = 0; i < res.h.size(); ++i)
    CHECK(res.h[i] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(res.phi == doctest::Approx(4.404230629990172).epsilon(1e-9));
  // the descent functional never increases along the recorded trace
  REQUIRE(trace.rows.size() >= 2);
  for (std::size_t k = 1; k < trace.rows.size(); ++k)
    CHECK(trace.rows[k].phi <= trace.rows[k - 1].phi + 1e-10);
  CHECK(trace.snapshots.size() == trace.rows.size());
  // trace endpoints match the run
  CHECK(trace.rows.back().t == doctest::Approx(res.time).epsilon(1e-12));
  CHECK(trace.rows.back().residual == doctest::Approx(res.residual).epsilon(1e-9));
}

TEST_CASE("flow converges from an eccentric body with shaped data") {
  FlowParams params;
  params.exps = {3.0, 0.0};
  params.residual_tol = 1e-7;
  std::vector<double> fv(64);
  for (std::size_t i = 0; i < fv.size(); ++i)
    fv[i] = std::exp(-0.5) * (1.0 + 0.05 * std::cos(2 * (2 * kPi * static_cast<double>(i) / 64)));
  const GridFunction f(std::move(fv));
  const FlowResult res = run_flow(params, f, ellipse_support(64, 1.2, 0.8));
  REQUIRE(res.outcome == FlowOutcome::Converged);
  CHECK(res.residual < 1e-7);
  CHECK(res.phi_violations == 0);
  CHECK(ma_residual(ConvexBody(res.h), f, params.exps) < 1e-7);
}

TEST_CASE("manufactured smooth target is recovered from its own density") {
  const std::size_t n = 128;
  std::vector<double> hv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2 * kPi * static_cast<double>(i) / n;
    hv[i] = 1.0 + 0.1 * std::cos(2 * t) + 0.02 * std::cos(4 * t);
  }
  const GridFunction hstar(std::move(hv));
  const ConvexBody target(hstar);
  const Exponents e{2.0, 0.0};
  const GridFunction f = measure_density(target, e);
  CHECK(f.min_value() > 0.0);

  FlowParams params;
  params.exps = e;
  params.residual_tol = 1e-9;
  const FlowResult res = run_flow(params, f, GridFunction::constant(n, 1.0));
  REQUIRE(res.outcome == FlowOutcome::Converged);
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) sup = std::max(sup, std::abs(res.h[i] - hstar[i]));
  CHECK(sup < 1e-5);
}

TEST_CASE("flow times out under a tiny budget") {
  FlowParams params;
  params.exps = {2.0, 1.0};
  params.max_time = 1e-4;
  const GridFunction f = GridFunction::constant(64, std::exp(-0.5));
  const FlowResult res = run_flow(params, f, GridFunction::constant(64, 1.5));
  CHECK(res.outcome == FlowOutcome::Timeout);
  CHECK(res.time <= params.max_time + 1e-12);
}

TEST_CASE("flow diverges when the data admits no equilibrium") {
  // q = p: constant data must stay below 1; 1.5 drives the body to collapse
  FlowParams params;
  params.exps = {2.0, 2.0};
  params.max_time = 50.0;
  const GridFunction f = GridFunction::constant(64, 1.5);
  const FlowResult res = run_flow(params, f, GridFunction::constant(64, 1.0));
  CHECK(res.outcome == FlowOutcome::Diverged);
  CHECK_FALSE(res.diagnostic.empty());
}

TEST_CASE("flow validates parameters and data") {
  FlowParams params;
  params.exps = {2.0, 1.0};
  const GridFunction f = GridFunction::constant(64, std::exp(-0.5));
  const GridFunction h0 = GridFunction::constant(64, 1.0);

  FlowParams bad = params;
  bad.dt_safety = 0.0;
  CHECK_THROWS_AS(run_flow(bad, f, h0), InvalidArgumentError);
  bad = params;
  bad.snapshot_stride = 0;
  CHECK_THROWS_AS(run_flow(bad, f, h0), InvalidArgumentError);
  CHECK_THROWS_AS(run_flow(params, GridFunction::constant(32, 1.0), h0), InvalidArgumentError);
  CHECK_THROWS_AS(run_flow(params, GridFunction::constant(64, -1.0), h0), NotPositiveError);
  // non-convex initial data is rejected by certification
  std::vector<double> wiggly(64);
  for (std::size_t i = 0; i < 64; ++i)
    wiggly[i] = 1.0 + 0.2 * std::cos(4 * (2 * kPi * static_cast<double>(i) / 64));
  CHECK_THROWS_AS(run_flow(params, f, GridFunction(std::move(wiggly))), NotConvexError);
}

TEST_CASE("limits agree across initial bodies when q < p") {
  FlowParams params;
  params.exps = {2.0, 1.0};
  params.residual_tol = 1e-7;
  std::vector<double> fv(64);
  for (std::size_t i = 0; i < fv.size(); ++i)
    fv[i] = std::exp(-0.5) * (1.0 + 0.05 * std::cos(2 * (2 * kPi * static_cast<double>(i) / 64)));
  const GridFunction f(std::move(fv));
  const std::vector<GridFunction> initials{GridFunction::constant(64, 0.7),
                                           GridFunction::constant(64, 1.5),
                                           ellipse_support(64, 1.2, 0.8)};
  const UniquenessReport rep = uniqueness_harness(params, f, initials);
  REQUIRE(rep.runs.size() == 3);
  for (const auto& run : rep.runs) CHECK(run.outcome == FlowOutcome::Converged);
  CHECK(rep.max_pairwise_sup < 1e-5);
  CHECK(rep.pass);

  // the harness refuses exponent pairs without the contraction ordering
  FlowParams eq = params;
  eq.exps = {2.0, 2.0};
  CHECK_THROWS_AS(uniqueness_harness(eq, f, initials), DomainError);
}

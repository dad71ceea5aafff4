#pragma once

#include <string>
#include <vector>

#include "core/convex_body.hpp"
#include "core/dual_measure.hpp"
#include "core/grid_function.hpp"

namespace minkflow {

struct FlowParams {
  Exponents exps;
  double dt_safety = 0.25;        // fraction of the parabolic step bound, in (0, 1)
  double residual_tol = 1e-6;     // stop when sup |density/f - 1| drops below
  double max_time = 500.0;        // flow-time budget
  std::size_t snapshot_stride = 200;  // accepted steps between trace rows
  double eps_convex = -1.0;       // < 0: scale-aware default
  double h_cap = 50.0;            // divergence guard on max h
  double h_floor = 1e-8;          // divergence guard on min h (collapse to the origin)
};

enum class FlowOutcome { Converged, Timeout, Diverged };

struct TraceRow {
  double t = 0.0;
  double phi = 0.0;
  double residual = 0.0;
  double h_min = 0.0, h_max = 0.0;
  double b_min = 0.0, b_max = 0.0;
};

struct FlowTrace {
  std::vector<TraceRow> rows;
  std::vector<GridFunction> snapshots;  // support samples, aligned with rows
};

struct FlowResult {
  FlowOutcome outcome = FlowOutcome::Diverged;
  GridFunction h;              // last accepted support samples
  double time = 0.0;
  double residual = 0.0;
  double phi = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
  long phi_violations = 0;     // increases beyond slack among accepted steps
  double max_phi_increase = 0.0;
  std::string diagnostic;      // reason when Diverged
};

// Support speed: h - f h^p exp(rho^2/2) rho^(2-q) / (h'' + h), rho^2 = h'^2 + h^2.
// Zero exactly where the density matches f.
GridFunction flow_velocity(const ConvexBody& body, const GridFunction& f, Exponents e);

// Radial speed at a direction u, evaluated in the radial chart:
// rho - f(xi) h(xi)^(p-1) rho^(3-q) exp(rho^2/2) / b(xi) at xi = normal_angle(u).
double radial_velocity(const ConvexBody& body, const GridFunction& f, Exponents e, double u);

// Descent functional: integral of f * (h^p/p) plus integral of F(rho) over
// directions (log branch of the first term at p = 0).
double lyapunov_value(const ConvexBody& body, const GridFunction& f, Exponents e);

// sup_i |density_i / f_i - 1|
double ma_residual(const ConvexBody& body, const GridFunction& f, Exponents e);

// Admissible band for constant-in-scale data: (0, inf) for q < p, (0, 1) at
// q = p, (0, 0) for q > p; ok iff min f and max f fall strictly inside.
struct AdmissibilityInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool ok = false;
};
AdmissibilityInterval check_admissibility(const GridFunction& f, Exponents e);

// Adaptive RK4 march of the support flow with monotonicity enforcement: steps
// that raise the descent functional by more than 1e-10 or break convexity are
// rejected and the step size halved (regrown 1.2x after ten acceptances).
FlowResult run_flow(const FlowParams& params, const GridFunction& f, const GridFunction& initial,
                    FlowTrace* trace = nullptr);

struct UniquenessReport {
  struct Run {
    FlowOutcome outcome = FlowOutcome::Diverged;
    double residual = 0.0;
  };
  std::vector<Run> runs;
  double max_pairwise_sup = 0.0;
  bool pass = false;
};

// Runs the flow from several initial bodies (q < p required) and measures the
// pairwise sup distance of the limits; passes when everything converges to
// within 10x residual_tol of a common body.
UniquenessReport uniqueness_harness(const FlowParams& params, const GridFunction& f,
                                    const std::vector<GridFunction>& initials);

}  // namespace minkflow

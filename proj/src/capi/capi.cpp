#include "minkflow.h"

#include <cstring>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "core/convex_body.hpp"
#include "core/dual_measure.hpp"
#include "core/errors.hpp"
#include "core/expression.hpp"
#include "core/flow.hpp"
#include "core/gauss_integrals.hpp"
#include "core/grid_function.hpp"
#include "core/io.hpp"
#include "core/polygon.hpp"
#include "core/variational.hpp"

using namespace minkflow;

struct mf_grid {
  GridFunction g;
};
struct mf_expression {
  Expression e;
};
struct mf_body {
  ConvexBody b;
};
struct mf_polygon {
  Polygon p;
};
struct mf_measure {
  DiscreteMeasure mu;
};
struct mf_trace {
  std::vector<TraceRow> rows;
  std::vector<GridFunction> snapshots;
};

namespace {

thread_local std::string t_last_error;

mf_status code_to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
      return MF_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotPositive:
      return MF_ERR_NOT_POSITIVE;
    case ErrorCode::NotConvex:
      return MF_ERR_NOT_CONVEX;
    case ErrorCode::Domain:
      return MF_ERR_DOMAIN;
    case ErrorCode::DegenerateEdge:
      return MF_ERR_DEGENERATE_EDGE;
    case ErrorCode::EmptyInterior:
      return MF_ERR_EMPTY_INTERIOR;
    case ErrorCode::StepTooLarge:
      return MF_ERR_STEP_TOO_LARGE;
    case ErrorCode::FacetMismatch:
      return MF_ERR_FACET_MISMATCH;
    case ErrorCode::NotSpread:
      return MF_ERR_NOT_SPREAD;
    case ErrorCode::MaxIters:
      return MF_ERR_MAX_ITERS;
    case ErrorCode::Parse:
      return MF_ERR_PARSE;
    case ErrorCode::Io:
      return MF_ERR_IO;
  }
  return MF_ERR_UNKNOWN;
}

template <typename Fn>
mf_status guarded(Fn&& fn) {
  try {
    fn();
    return MF_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return code_to_status(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return MF_ERR_UNKNOWN;
  } catch (...) {
    t_last_error = "unrecognized failure";
    return MF_ERR_UNKNOWN;
  }
}

mf_status null_arg(const char* what) {
  t_last_error = std::string("null pointer: ") + what;
  return MF_ERR_INVALID_ARGUMENT;
}

void copy_string(char* dst, size_t cap, const std::string& src) {
  const size_t n = src.size() < cap - 1 ? src.size() : cap - 1;
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

FlowParams to_flow_params(const mf_flow_params& p) {
  FlowParams out;
  out.exps = {p.p, p.q};
  out.dt_safety = p.dt_safety;
  out.residual_tol = p.residual_tol;
  out.max_time = p.max_time;
  out.snapshot_stride = p.snapshot_stride < 1 ? 0 : static_cast<std::size_t>(p.snapshot_stride);
  out.eps_convex = p.eps_convex;
  out.h_cap = p.h_cap;
  out.h_floor = p.h_floor;
  return out;
}

VariationalParams to_variational_params(const mf_variational_params& p) {
  VariationalParams out;
  out.exps = {p.p, p.q};
  out.grid_n = p.grid_n;
  out.step_init = p.step_init;
  out.grad_eps = p.grad_eps;
  out.el_tol = p.el_tol;
  out.max_iters = p.max_iters;
  out.initial_radius = p.initial_radius;
  return out;
}

template <typename Target>
mf_status weak_convergence_impl(const Target& target, const mf_grid* test_fn, double p, double q,
                                const size_t* ms, size_t n_ms, double* values, double* errors) {
  return guarded([&] {
    std::vector<std::size_t> refinements(ms, ms + n_ms);
    const auto rows = weak_convergence_study(target, test_fn->g, {p, q}, refinements);
    for (size_t i = 0; i < rows.size(); ++i) {
      values[i] = rows[i].value;
      errors[i] = rows[i].error;
    }
  });
}

void fill_variational_report(mf_variational_report& out, const VariationalReport& rep,
                             double el_tol, const std::string& diagnostic) {
  out.iterations = rep.iterations;
  out.objective_evals = rep.objective_evals;
  out.objective = rep.objective;
  out.el_res = rep.el_res;
  out.disk_objective = rep.disk_objective;
  out.initial_radius = rep.initial_radius;
  out.reached_tol = rep.el_res < el_tol ? 1 : 0;
  copy_string(out.diagnostic, sizeof out.diagnostic, diagnostic);
}

}  // namespace

extern "C" {

const char* mf_last_error(void) { return t_last_error.c_str(); }

const char* mf_version(void) { return "1.0.0"; }

/* ---- grids ------------------------------------------------------------- */

mf_status mf_grid_create(const double* values, size_t n, mf_grid** out) {
  if (!values) return null_arg("values");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_grid{GridFunction(std::vector<double>(values, values + n))}; });
}

mf_status mf_grid_constant(size_t n, double value, mf_grid** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_grid{GridFunction::constant(n, value)}; });
}

size_t mf_grid_size(const mf_grid* g) { return g ? g->g.size() : 0; }

mf_status mf_grid_values(const mf_grid* g, double* out) {
  if (!g) return null_arg("g");
  if (!out) return null_arg("out");
  for (size_t i = 0; i < g->g.size(); ++i) out[i] = g->g[i];
  return MF_OK;
}

void mf_grid_free(mf_grid* g) { delete g; }

mf_status mf_grid_write(const char* path, const mf_grid* g) {
  if (!path) return null_arg("path");
  if (!g) return null_arg("g");
  return guarded([&] { io::write_grid_function(path, g->g); });
}

mf_status mf_grid_read(const char* path, mf_grid** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_grid{io::read_grid_function(path)}; });
}

/* ---- expressions -------------------------------------------------------- */

mf_status mf_expression_parse(const char* text, mf_expression** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_expression{Expression::parse(text)}; });
}

mf_status mf_expression_eval(const mf_expression* e, double theta, double* out) {
  if (!e) return null_arg("e");
  if (!out) return null_arg("out");
  return guarded([&] { *out = e->e.eval(theta); });
}

mf_status mf_expression_sample(const mf_expression* e, size_t n, mf_grid** out) {
  if (!e) return null_arg("e");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_grid{e->e.sample(n)}; });
}

void mf_expression_free(mf_expression* e) { delete e; }

/* ---- bodies -------------------------------------------------------------- */

mf_status mf_body_create(const mf_grid* support, double eps_convex, mf_body** out) {
  if (!support) return null_arg("support");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_body{ConvexBody(support->g, eps_convex)}; });
}

mf_status mf_body_support(const mf_body* b, mf_grid** out) {
  if (!b) return null_arg("b");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_grid{b->b.support()}; });
}

mf_status mf_body_min_curvature(const mf_body* b, double* out) {
  if (!b) return null_arg("b");
  if (!out) return null_arg("out");
  *out = b->b.min_curvature();
  return MF_OK;
}

mf_status mf_body_radial(const mf_body* b, double u, double* out) {
  if (!b) return null_arg("b");
  if (!out) return null_arg("out");
  return guarded([&] { *out = b->b.radial(u); });
}

void mf_body_free(mf_body* b) { delete b; }

/* ---- polygons ------------------------------------------------------------ */

mf_status mf_polygon_create(const double* xy, size_t m, mf_polygon** out) {
  if (!xy) return null_arg("xy");
  if (!out) return null_arg("out");
  return guarded([&] {
    std::vector<Vec2> vs(m);
    for (size_t i = 0; i < m; ++i) vs[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = new mf_polygon{Polygon(std::move(vs))};
  });
}

size_t mf_polygon_size(const mf_polygon* p) { return p ? p->p.size() : 0; }

mf_status mf_polygon_vertices(const mf_polygon* p, double* xy_out) {
  if (!p) return null_arg("p");
  if (!xy_out) return null_arg("xy_out");
  for (size_t i = 0; i < p->p.size(); ++i) {
    xy_out[2 * i] = p->p.vertex(i).x;
    xy_out[2 * i + 1] = p->p.vertex(i).y;
  }
  return MF_OK;
}

mf_status mf_polygon_support(const mf_polygon* p, double theta, double* out) {
  if (!p) return null_arg("p");
  if (!out) return null_arg("out");
  return guarded([&] { *out = p->p.support(theta); });
}

mf_status mf_polygon_support_grid(const mf_polygon* p, size_t n, mf_grid** out) {
  if (!p) return null_arg("p");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_grid{p->p.support_grid(n)}; });
}

mf_status mf_polygon_polar(const mf_polygon* p, mf_polygon** out) {
  if (!p) return null_arg("p");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_polygon{polar_body(p->p)}; });
}

void mf_polygon_free(mf_polygon* p) { delete p; }

mf_status mf_polygon_write(const char* path, const mf_polygon* p) {
  if (!path) return null_arg("path");
  if (!p) return null_arg("p");
  return guarded([&] { io::write_polygon(path, p->p); });
}

mf_status mf_polygon_read(const char* path, mf_polygon** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_polygon{io::read_polygon(path)}; });
}

mf_status mf_sniff_grid_file(const char* path, int* is_grid) {
  if (!path) return null_arg("path");
  if (!is_grid) return null_arg("is_grid");
  return guarded([&] { *is_grid = io::looks_like_grid_function(path) ? 1 : 0; });
}

mf_status mf_wulff_shape(const mf_grid* support, mf_polygon** out) {
  if (!support) return null_arg("support");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_polygon{wulff_shape(support->g)}; });
}

/* ---- measures ------------------------------------------------------------ */

mf_status mf_measure_create(const double* directions, const double* weights, size_t m,
                            mf_measure** out) {
  if (!directions) return null_arg("directions");
  if (!weights) return null_arg("weights");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new mf_measure{DiscreteMeasure(std::vector<double>(directions, directions + m),
                                          std::vector<double>(weights, weights + m))};
  });
}

size_t mf_measure_size(const mf_measure* mu) { return mu ? mu->mu.size() : 0; }

mf_status mf_measure_data(const mf_measure* mu, double* directions, double* weights) {
  if (!mu) return null_arg("mu");
  if (!directions) return null_arg("directions");
  if (!weights) return null_arg("weights");
  for (size_t i = 0; i < mu->mu.size(); ++i) {
    directions[i] = mu->mu.direction(i);
    weights[i] = mu->mu.weight(i);
  }
  return MF_OK;
}

mf_status mf_measure_total(const mf_measure* mu, double* out) {
  if (!mu) return null_arg("mu");
  if (!out) return null_arg("out");
  *out = mu->mu.total();
  return MF_OK;
}

void mf_measure_free(mf_measure* mu) { delete mu; }

mf_status mf_measure_write(const char* path, const mf_measure* mu) {
  if (!path) return null_arg("path");
  if (!mu) return null_arg("mu");
  return guarded([&] { io::write_measure_atoms(path, mu->mu); });
}

mf_status mf_measure_read(const char* path, mf_measure** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_measure{io::read_measure_atoms(path)}; });
}

mf_status mf_measure_write_degrees(const char* path, const mf_measure* mu) {
  if (!path) return null_arg("path");
  if (!mu) return null_arg("mu");
  return guarded([&] { io::write_atoms_degrees(path, mu->mu); });
}

mf_status mf_measure_read_degrees(const char* path, mf_measure** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_measure{io::read_atoms_degrees(path)}; });
}

mf_status mf_density_write(const char* path, const mf_grid* density) {
  if (!path) return null_arg("path");
  if (!density) return null_arg("density");
  return guarded([&] { io::write_density(path, density->g); });
}

mf_status mf_density_read(const char* path, mf_grid** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_grid{io::read_density(path)}; });
}

mf_status mf_measure_density(const mf_body* b, double p, double q, mf_grid** out) {
  if (!b) return null_arg("b");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_grid{measure_density(b->b, {p, q})}; });
}

mf_status mf_measure_of_polygon(const mf_polygon* poly, double p, double q, mf_measure** out) {
  if (!poly) return null_arg("poly");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_measure{measure_of_polygon(poly->p, {p, q})}; });
}

mf_status mf_density_total_mass(const mf_grid* density, double* out) {
  if (!density) return null_arg("density");
  if (!out) return null_arg("out");
  return guarded([&] { *out = total_mass(density->g); });
}

mf_status mf_quermassintegral_body(const mf_body* b, double q, double* out) {
  if (!b) return null_arg("b");
  if (!out) return null_arg("out");
  return guarded([&] { *out = quermassintegral(b->b, q); });
}

mf_status mf_quermassintegral_polygon(const mf_polygon* p, double q, double* out) {
  if (!p) return null_arg("p");
  if (!out) return null_arg("out");
  return guarded([&] { *out = quermassintegral(p->p, q); });
}

mf_status mf_verify_variational_body(const mf_body* b, const mf_grid* f, double p, double q,
                                     double t_step, double out[3]) {
  if (!b) return null_arg("b");
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] {
    const VariationalCheck c = verify_variational_formula(b->b, f->g, {p, q}, t_step);
    out[0] = c.lhs;
    out[1] = c.rhs;
    out[2] = c.rel_gap;
  });
}

mf_status mf_verify_variational_polygon(const mf_polygon* poly, const mf_grid* f, double p,
                                        double q, double t_step, double out[3]) {
  if (!poly) return null_arg("poly");
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] {
    const VariationalCheck c = verify_variational_formula(poly->p, f->g, {p, q}, t_step);
    out[0] = c.lhs;
    out[1] = c.rhs;
    out[2] = c.rel_gap;
  });
}

mf_status mf_weak_convergence_body(const mf_body* target, const mf_grid* test_fn, double p,
                                   double q, const size_t* ms, size_t n_ms, double* values,
                                   double* errors) {
  if (!target) return null_arg("target");
  if (!test_fn) return null_arg("test_fn");
  if (!ms) return null_arg("ms");
  if (!values) return null_arg("values");
  if (!errors) return null_arg("errors");
  return weak_convergence_impl(target->b, test_fn, p, q, ms, n_ms, values, errors);
}

mf_status mf_weak_convergence_polygon(const mf_polygon* target, const mf_grid* test_fn, double p,
                                      double q, const size_t* ms, size_t n_ms, double* values,
                                      double* errors) {
  if (!target) return null_arg("target");
  if (!test_fn) return null_arg("test_fn");
  if (!ms) return null_arg("ms");
  if (!values) return null_arg("values");
  if (!errors) return null_arg("errors");
  return weak_convergence_impl(target->p, test_fn, p, q, ms, n_ms, values, errors);
}

/* ---- flow ----------------------------------------------------------------- */

void mf_flow_params_init(mf_flow_params* params) {
  if (!params) return;
  const FlowParams d;
  params->p = d.exps.p;
  params->q = d.exps.q;
  params->dt_safety = d.dt_safety;
  params->residual_tol = d.residual_tol;
  params->max_time = d.max_time;
  params->snapshot_stride = d.snapshot_stride;
  params->eps_convex = d.eps_convex;
  params->h_cap = d.h_cap;
  params->h_floor = d.h_floor;
}

mf_status mf_run_flow(const mf_flow_params* params, const mf_grid* f, const mf_grid* initial,
                      mf_grid** limit_out, mf_trace** trace_out, mf_flow_report* report) {
  if (!params) return null_arg("params");
  if (!f) return null_arg("f");
  if (!initial) return null_arg("initial");
  if (!limit_out) return null_arg("limit_out");
  if (!report) return null_arg("report");
  return guarded([&] {
    FlowTrace trace;
    const FlowResult r =
        run_flow(to_flow_params(*params), f->g, initial->g, trace_out ? &trace : nullptr);
    report->outcome = r.outcome == FlowOutcome::Converged  ? MF_FLOW_CONVERGED
                      : r.outcome == FlowOutcome::Timeout ? MF_FLOW_TIMEOUT
                                                          : MF_FLOW_DIVERGED;
    report->time = r.time;
    report->residual = r.residual;
    report->phi = r.phi;
    report->max_phi_increase = r.max_phi_increase;
    report->accepted_steps = r.accepted_steps;
    report->rejected_steps = r.rejected_steps;
    report->phi_violations = r.phi_violations;
    copy_string(report->diagnostic, sizeof report->diagnostic, r.diagnostic);
    *limit_out = new mf_grid{r.h};
    if (trace_out) *trace_out = new mf_trace{std::move(trace.rows), std::move(trace.snapshots)};
  });
}

size_t mf_trace_rows(const mf_trace* t) { return t ? t->rows.size() : 0; }

mf_status mf_trace_row(const mf_trace* t, size_t i, double out[7]) {
  if (!t) return null_arg("t");
  if (!out) return null_arg("out");
  if (i >= t->rows.size()) {
    t_last_error = "trace row index out of range";
    return MF_ERR_INVALID_ARGUMENT;
  }
  const TraceRow& r = t->rows[i];
  out[0] = r.t;
  out[1] = r.phi;
  out[2] = r.residual;
  out[3] = r.h_min;
  out[4] = r.h_max;
  out[5] = r.b_min;
  out[6] = r.b_max;
  return MF_OK;
}

size_t mf_trace_snapshots(const mf_trace* t) { return t ? t->snapshots.size() : 0; }

mf_status mf_trace_snapshot(const mf_trace* t, size_t i, mf_grid** out) {
  if (!t) return null_arg("t");
  if (!out) return null_arg("out");
  if (i >= t->snapshots.size()) {
    t_last_error = "trace snapshot index out of range";
    return MF_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = new mf_grid{t->snapshots[i]}; });
}

mf_status mf_trace_write(const char* path, const mf_trace* t) {
  if (!path) return null_arg("path");
  if (!t) return null_arg("t");
  return guarded([&] { io::write_trace(path, t->rows); });
}

void mf_trace_free(mf_trace* t) { delete t; }

mf_status mf_uniqueness_check(const mf_flow_params* params, const mf_grid* f,
                              const mf_grid* const* initials, size_t n_initials,
                              double* max_pairwise_sup, int* all_converged, int* pass) {
  if (!params) return null_arg("params");
  if (!f) return null_arg("f");
  if (!initials) return null_arg("initials");
  if (!max_pairwise_sup) return null_arg("max_pairwise_sup");
  if (!all_converged) return null_arg("all_converged");
  if (!pass) return null_arg("pass");
  return guarded([&] {
    std::vector<GridFunction> in;
    in.reserve(n_initials);
    for (size_t i = 0; i < n_initials; ++i) {
      if (!initials[i]) throw InvalidArgumentError("null initial body");
      in.push_back(initials[i]->g);
    }
    const UniquenessReport rep = uniqueness_harness(to_flow_params(*params), f->g, in);
    *max_pairwise_sup = rep.max_pairwise_sup;
    int conv = 1;
    for (const auto& run : rep.runs)
      if (run.outcome != FlowOutcome::Converged) conv = 0;
    *all_converged = conv;
    *pass = rep.pass ? 1 : 0;
  });
}

mf_status mf_admissibility(const mf_grid* f, double p, double q, double* lower, double* upper,
                           int* ok) {
  if (!f) return null_arg("f");
  if (!lower) return null_arg("lower");
  if (!upper) return null_arg("upper");
  if (!ok) return null_arg("ok");
  return guarded([&] {
    const AdmissibilityInterval band = check_admissibility(f->g, {p, q});
    *lower = band.lower;
    *upper = band.upper;
    *ok = band.ok ? 1 : 0;
  });
}

mf_status mf_ma_residual(const mf_body* b, const mf_grid* f, double p, double q, double* out) {
  if (!b) return null_arg("b");
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] { *out = ma_residual(b->b, f->g, {p, q}); });
}

mf_status mf_lyapunov(const mf_body* b, const mf_grid* f, double p, double q, double* out) {
  if (!b) return null_arg("b");
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] { *out = lyapunov_value(b->b, f->g, {p, q}); });
}

mf_status mf_flow_velocity(const mf_body* b, const mf_grid* f, double p, double q, mf_grid** out) {
  if (!b) return null_arg("b");
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mf_grid{flow_velocity(b->b, f->g, {p, q})}; });
}

mf_status mf_radial_velocity(const mf_body* b, const mf_grid* f, double p, double q, double u,
                             double* out) {
  if (!b) return null_arg("b");
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] { *out = radial_velocity(b->b, f->g, {p, q}, u); });
}

/* ---- variational ----------------------------------------------------------- */

void mf_variational_params_init(mf_variational_params* params) {
  if (!params) return;
  const VariationalParams d;
  params->p = 2.0;
  params->q = 2.0;
  params->grid_n = d.grid_n;
  params->step_init = d.step_init;
  params->grad_eps = d.grad_eps;
  params->el_tol = d.el_tol;
  params->max_iters = d.max_iters;
  params->initial_radius = d.initial_radius;
}

mf_status mf_solve_variational(const mf_variational_params* params, const mf_measure* mu,
                               mf_polygon** body_out, mf_grid** support_out,
                               mf_variational_report* report) {
  if (!params) return null_arg("params");
  if (!mu) return null_arg("mu");
  if (!body_out) return null_arg("body_out");
  if (!support_out) return null_arg("support_out");
  if (!report) return null_arg("report");
  try {
    const VariationalResult r = solve_variational(to_variational_params(*params), mu->mu);
    *body_out = new mf_polygon{r.body};
    *support_out = new mf_grid{r.h};
    fill_variational_report(*report, r.report, params->el_tol, "");
    return MF_OK;
  } catch (const MaxItersWithIterate& e) {
    t_last_error = e.what();
    const VariationalResult& r = e.best();
    *body_out = new mf_polygon{r.body};
    *support_out = new mf_grid{r.h};
    fill_variational_report(*report, r.report, params->el_tol, e.what());
    return MF_ERR_MAX_ITERS;
  } catch (const Error& e) {
    t_last_error = e.what();
    return code_to_status(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return MF_ERR_UNKNOWN;
  } catch (...) {
    t_last_error = "unrecognized failure";
    return MF_ERR_UNKNOWN;
  }
}

mf_status mf_objective_phi(const mf_grid* h, const mf_measure* mu, double p, double q,
                           double* out) {
  if (!h) return null_arg("h");
  if (!mu) return null_arg("mu");
  if (!out) return null_arg("out");
  return guarded([&] { *out = objective_phi(h->g, mu->mu, {p, q}); });
}

mf_status mf_el_residual(const mf_polygon* body, const mf_measure* mu, double p, double q,
                         double* out) {
  if (!body) return null_arg("body");
  if (!mu) return null_arg("mu");
  if (!out) return null_arg("out");
  return guarded([&] { *out = el_residual(body->p, mu->mu, {p, q}); });
}

} /* extern "C" */

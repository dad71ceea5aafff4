/* minkflow: planar Gauss-weighted curvature-measure solvers.
 *
 * C interface over the solver core.  All functions returning mf_status set a
 * thread-local message readable via mf_last_error() on failure.  Objects are
 * opaque; every *_create / out-parameter object must be released with the
 * matching *_free.  Output parameters are written only on MF_OK unless a
 * function documents otherwise.
 */
#ifndef MINKFLOW_H
#define MINKFLOW_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mf_status {
  MF_OK = 0,
  MF_ERR_INVALID_ARGUMENT = 1,
  MF_ERR_NOT_POSITIVE = 2,
  MF_ERR_NOT_CONVEX = 3,
  MF_ERR_DOMAIN = 4,
  MF_ERR_DEGENERATE_EDGE = 5,
  MF_ERR_EMPTY_INTERIOR = 6,
  MF_ERR_STEP_TOO_LARGE = 7,
  MF_ERR_FACET_MISMATCH = 8,
  MF_ERR_NOT_SPREAD = 9,
  MF_ERR_MAX_ITERS = 10,
  MF_ERR_PARSE = 11,
  MF_ERR_IO = 12,
  MF_ERR_UNKNOWN = 13
} mf_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* mf_last_error(void);

const char* mf_version(void);

/* ---- periodic grid samples -------------------------------------------- */

typedef struct mf_grid mf_grid;

mf_status mf_grid_create(const double* values, size_t n, mf_grid** out);
mf_status mf_grid_constant(size_t n, double value, mf_grid** out);
size_t mf_grid_size(const mf_grid* g);
/* copies all n values into out (caller allocates n doubles) */
mf_status mf_grid_values(const mf_grid* g, double* out);
void mf_grid_free(mf_grid* g);

mf_status mf_grid_write(const char* path, const mf_grid* g);
mf_status mf_grid_read(const char* path, mf_grid** out);

/* ---- density expressions ---------------------------------------------- */

/* Grammar: numbers, 'theta', 'pi', cos(...), sin(...), exp(...), +, -, *,
 * parentheses, unary minus. */
typedef struct mf_expression mf_expression;

mf_status mf_expression_parse(const char* text, mf_expression** out);
mf_status mf_expression_eval(const mf_expression* e, double theta, double* out);
/* rejects expressions that are not 2*pi periodic */
mf_status mf_expression_sample(const mf_expression* e, size_t n, mf_grid** out);
void mf_expression_free(mf_expression* e);

/* ---- convex bodies given by support samples --------------------------- */

typedef struct mf_body mf_body;

/* eps_convex < 0 picks the default margin (1e-8 * max support) */
mf_status mf_body_create(const mf_grid* support, double eps_convex, mf_body** out);
mf_status mf_body_support(const mf_body* b, mf_grid** out);
/* smallest grid value of h'' + h */
mf_status mf_body_min_curvature(const mf_body* b, double* out);
/* distance from the origin to the boundary along direction u */
mf_status mf_body_radial(const mf_body* b, double u, double* out);
void mf_body_free(mf_body* b);

/* ---- convex polygons --------------------------------------------------- */

typedef struct mf_polygon mf_polygon;

/* xy holds m (x, y) pairs, counter-clockwise, origin strictly inside */
mf_status mf_polygon_create(const double* xy, size_t m, mf_polygon** out);
size_t mf_polygon_size(const mf_polygon* p);
/* copies m (x, y) pairs into xy_out (caller allocates 2*m doubles) */
mf_status mf_polygon_vertices(const mf_polygon* p, double* xy_out);
mf_status mf_polygon_support(const mf_polygon* p, double theta, double* out);
mf_status mf_polygon_support_grid(const mf_polygon* p, size_t n, mf_grid** out);
mf_status mf_polygon_polar(const mf_polygon* p, mf_polygon** out);
void mf_polygon_free(mf_polygon* p);

mf_status mf_polygon_write(const char* path, const mf_polygon* p);
mf_status mf_polygon_read(const char* path, mf_polygon** out);
/* 1 if the file carries grid samples, 0 if vertices; MF_ERR_IO if unreadable */
mf_status mf_sniff_grid_file(const char* path, int* is_grid);

/* largest body with the given support samples (half-plane intersection) */
mf_status mf_wulff_shape(const mf_grid* support, mf_polygon** out);

/* ---- weighted curvature measures -------------------------------------- */

typedef struct mf_measure mf_measure;

mf_status mf_measure_create(const double* directions, const double* weights, size_t m,
                            mf_measure** out);
size_t mf_measure_size(const mf_measure* mu);
/* copies directions and weights (caller allocates m doubles each) */
mf_status mf_measure_data(const mf_measure* mu, double* directions, double* weights);
mf_status mf_measure_total(const mf_measure* mu, double* out);
void mf_measure_free(mf_measure* mu);

mf_status mf_measure_write(const char* path, const mf_measure* mu);        /* radians */
mf_status mf_measure_read(const char* path, mf_measure** out);             /* radians */
mf_status mf_measure_write_degrees(const char* path, const mf_measure* mu);
mf_status mf_measure_read_degrees(const char* path, mf_measure** out);
mf_status mf_density_write(const char* path, const mf_grid* density);
mf_status mf_density_read(const char* path, mf_grid** out);

/* density of the (p, q) curvature measure in the normal angle */
mf_status mf_measure_density(const mf_body* b, double p, double q, mf_grid** out);
/* one atom per polygon edge */
mf_status mf_measure_of_polygon(const mf_polygon* poly, double p, double q, mf_measure** out);
mf_status mf_density_total_mass(const mf_grid* density, double* out);

/* Gauss-weighted radial-power volume of the body */
mf_status mf_quermassintegral_body(const mf_body* b, double q, double* out);
mf_status mf_quermassintegral_polygon(const mf_polygon* p, double q, double* out);

/* two-sided difference quotient along the p-sum perturbation vs. the
 * measure-side prediction; out = {lhs, rhs, rel_gap} */
mf_status mf_verify_variational_body(const mf_body* b, const mf_grid* f, double p, double q,
                                     double t_step, double out[3]);
mf_status mf_verify_variational_polygon(const mf_polygon* poly, const mf_grid* f, double p,
                                        double q, double t_step, double out[3]);

/* integrates test_fn against measures of tangent polygons with counts ms;
 * values and errors receive n_ms entries each */
mf_status mf_weak_convergence_body(const mf_body* target, const mf_grid* test_fn, double p,
                                   double q, const size_t* ms, size_t n_ms, double* values,
                                   double* errors);
mf_status mf_weak_convergence_polygon(const mf_polygon* target, const mf_grid* test_fn, double p,
                                      double q, const size_t* ms, size_t n_ms, double* values,
                                      double* errors);

/* ---- curvature flow ----------------------------------------------------- */

typedef struct mf_flow_params {
  double p;
  double q;
  double dt_safety;     /* in (0, 1) */
  double residual_tol;  /* stop when the relative equation defect drops below */
  double max_time;
  long snapshot_stride; /* trace every this many accepted steps */
  double eps_convex;    /* < 0: default margin */
  double h_cap;         /* abort when max support exceeds this */
  double h_floor;       /* abort when min support falls below this (collapse) */
} mf_flow_params;

void mf_flow_params_init(mf_flow_params* params); /* fills defaults */

typedef enum mf_flow_outcome {
  MF_FLOW_CONVERGED = 0,
  MF_FLOW_TIMEOUT = 1,
  MF_FLOW_DIVERGED = 2
} mf_flow_outcome;

typedef struct mf_flow_report {
  int outcome;               /* mf_flow_outcome */
  double time;
  double residual;
  double phi;                /* descent functional at the final state */
  double max_phi_increase;   /* largest single-step increase ever accepted */
  long accepted_steps;
  long rejected_steps;
  long phi_violations;       /* accepted steps that raised phi beyond slack */
  char diagnostic[256];      /* reason when outcome is DIVERGED, else empty */
} mf_flow_report;

typedef struct mf_trace mf_trace;

/* limit_out receives the final support samples; trace_out may be NULL.
 * Returns MF_OK for every completed run regardless of outcome; the outcome
 * field says how it ended. */
mf_status mf_run_flow(const mf_flow_params* params, const mf_grid* f, const mf_grid* initial,
                      mf_grid** limit_out, mf_trace** trace_out, mf_flow_report* report);

size_t mf_trace_rows(const mf_trace* t);
/* out = {t, phi, residual, h_min, h_max, b_min, b_max} */
mf_status mf_trace_row(const mf_trace* t, size_t i, double out[7]);
size_t mf_trace_snapshots(const mf_trace* t);
mf_status mf_trace_snapshot(const mf_trace* t, size_t i, mf_grid** out);
mf_status mf_trace_write(const char* path, const mf_trace* t);
void mf_trace_free(mf_trace* t);

/* flow the same density from several initial bodies and compare the limits */
mf_status mf_uniqueness_check(const mf_flow_params* params, const mf_grid* f,
                              const mf_grid* const* initials, size_t n_initials,
                              double* max_pairwise_sup, int* all_converged, int* pass);

/* data range admitting a solution: lower < f < upper required */
mf_status mf_admissibility(const mf_grid* f, double p, double q, double* lower, double* upper,
                           int* ok);

/* sup |density of body / f - 1| over the grid */
mf_status mf_ma_residual(const mf_body* b, const mf_grid* f, double p, double q, double* out);
/* descent functional of the flow */
mf_status mf_lyapunov(const mf_body* b, const mf_grid* f, double p, double q, double* out);
/* pointwise flow speed of the support samples */
mf_status mf_flow_velocity(const mf_body* b, const mf_grid* f, double p, double q, mf_grid** out);
/* flow speed of the radial function at direction u */
mf_status mf_radial_velocity(const mf_body* b, const mf_grid* f, double p, double q, double u,
                             double* out);

/* ---- discrete-measure minimization ------------------------------------- */

typedef struct mf_variational_params {
  double p;              /* > 0 */
  double q;              /* > 0 */
  size_t grid_n;
  double step_init;
  double grad_eps;       /* relative finite-difference step */
  double el_tol;         /* per-atom mass-match stopping tolerance */
  long max_iters;
  double initial_radius; /* <= 0: pick the best disk automatically */
} mf_variational_params;

void mf_variational_params_init(mf_variational_params* params);

typedef struct mf_variational_report {
  long iterations;
  long objective_evals;
  double objective;
  double el_res;
  double disk_objective;
  double initial_radius;
  int reached_tol;       /* 1 when el_res < el_tol */
  char diagnostic[256];
} mf_variational_report;

/* On MF_OK the solution polygon and its support samples are returned.  On
 * MF_ERR_MAX_ITERS the best iterate found is still written to the output
 * parameters and the report; other errors leave the outputs untouched. */
mf_status mf_solve_variational(const mf_variational_params* params, const mf_measure* mu,
                               mf_polygon** body_out, mf_grid** support_out,
                               mf_variational_report* report);

/* objective value of support samples against the measure */
mf_status mf_objective_phi(const mf_grid* h, const mf_measure* mu, double p, double q,
                           double* out);
/* worst relative per-atom mass mismatch of the polygon */
mf_status mf_el_residual(const mf_polygon* body, const mf_measure* mu, double p, double q,
                         double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MINKFLOW_H */

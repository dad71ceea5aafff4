#pragma once

#include <cstddef>
#include <limits>
#include <memory>

#include "core/dual_measure.hpp"
#include "core/errors.hpp"
#include "core/grid_function.hpp"
#include "core/polygon.hpp"

namespace minkflow {

// Discrete-measure solve by direct minimization of the support objective.
// Requires p > 0 and q > 0.
struct VariationalParams {
  Exponents exps;
  std::size_t grid_n = 256;
  double step_init = 1.0;
  double grad_eps = 1e-6;  // relative finite-difference step
  double el_tol = 1e-8;    // per-atom mass-match stopping tolerance
  long max_iters = 20000;
  double initial_radius = -1.0;  // <= 0: pick the best disk automatically
};

struct VariationalReport {
  long iterations = 0;
  long objective_evals = 0;
  double objective = 0.0;
  double el_res = std::numeric_limits<double>::infinity();
  double disk_objective = 0.0;  // value at the disk initializer
  double initial_radius = 0.0;
};

struct VariationalResult {
  Polygon body;
  GridFunction h;  // final support samples on the solver grid
  VariationalReport report;
};

// Iteration budget exhausted (or descent stalled) before the per-atom mass
// match reached el_tol; carries the best iterate seen.
class MaxItersWithIterate : public MaxItersError {
 public:
  MaxItersWithIterate(const std::string& what, VariationalResult best);
  const VariationalResult& best() const { return *best_; }

 private:
  std::shared_ptr<const VariationalResult> best_;
};

// Moves every atom onto the grid angle it already sits on up to rounding
// noise (merging coincident atoms) so facet/atom comparisons are exact;
// atoms genuinely between grid angles are rejected rather than relocated.
DiscreteMeasure snap_to_grid(const DiscreteMeasure& mu, std::size_t n);

// (1/p) sum_i w_i h_Q(v_i)^p + integral of the radial tail over directions,
// both evaluated through Q = wulff_shape(h).
double objective_phi(const GridFunction& h, const DiscreteMeasure& mu, Exponents e);

// max_i |mass_K(v_i) - w_i| / w_i over the atoms; facets of K with mass
// below 1e-10 are dropped, and a facet heavier than 1e-8 off every atom
// direction raises FacetMismatch.
double el_residual(const Polygon& body, const DiscreteMeasure& mu, Exponents e);

// Smallest objective over centred disks, and where it is attained.
struct DiskSearch {
  double radius = 0.0;
  double value = 0.0;
};
DiskSearch best_disk(const DiscreteMeasure& mu, Exponents e, std::size_t grid_n);

// Projected descent over even support vectors: central-difference gradient on
// the antipodally identified coordinates, mode-smoothed direction, backtracking
// line search, Wulff-shape canonicalization after each accepted step.  Stops
// when el_residual of the Wulff polygon drops below el_tol.
VariationalResult solve_variational(const VariationalParams& params, const DiscreteMeasure& mu);

}  // namespace minkflow

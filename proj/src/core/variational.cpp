#include "core/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "core/gauss_integrals.hpp"
#include "core/parallel.hpp"
#include "core/quadrature.hpp"

namespace minkflow {

namespace {

constexpr double kFacetDrop = 1e-10;
constexpr double kFacetComplain = 1e-8;
constexpr double kDirectionMatchTol = 1e-6;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive_exponents(Exponents e) {
  if (!(e.p > 0.0) || !(e.q > 0.0))
    throw InvalidArgumentError("this solve path needs p > 0 and q > 0");
}

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

// index of the atom direction nearest to x, by circular distance
std::size_t nearest_atom(const std::vector<double>& dirs, double x) {
  auto it = std::lower_bound(dirs.begin(), dirs.end(), x);
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (long off = -1; off <= 1; ++off) {
    long i = (it - dirs.begin()) + off;
    std::size_t j = ((i % static_cast<long>(dirs.size())) + dirs.size()) % dirs.size();
    const double d = circular_distance(dirs[j], x);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

}  // namespace

MaxItersWithIterate::MaxItersWithIterate(const std::string& what, VariationalResult best)
    : MaxItersError(what), best_(std::make_shared<const VariationalResult>(std::move(best))) {}

DiscreteMeasure snap_to_grid(const DiscreteMeasure& mu, std::size_t n) {
  validate_grid_size(n);
  const double dtheta = kTwoPi / static_cast<double>(n);
  std::map<std::size_t, double> bucket;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double dir = mu.direction(i);
    const long long raw = std::llround(dir / dtheta);
    const double snap_err = std::abs(dir - static_cast<double>(raw) * dtheta);
    // absorb file/unit-conversion rounding only; silently relocating an atom
    // would solve a different problem than the one handed in
    if (snap_err > 1e-8)
      throw InvalidArgumentError("atom direction " + std::to_string(dir) +
                                 " does not lie on the " + std::to_string(n) + "-point grid");
    const std::size_t idx = static_cast<std::size_t>(((raw % static_cast<long long>(n)) + n) % n);
    bucket[idx] += mu.weight(i);
  }
  std::vector<double> dirs, weights;
  dirs.reserve(bucket.size());
  weights.reserve(bucket.size());
  for (const auto& [idx, w] : bucket) {
    dirs.push_back(static_cast<double>(idx) * dtheta);
    weights.push_back(w);
  }
  return DiscreteMeasure(std::move(dirs), std::move(weights));
}

double objective_phi(const GridFunction& h, const DiscreteMeasure& mu, Exponents e) {
  require_positive_exponents(e);
  if (!(h.min_value() > 0.0)) throw DomainError("support samples must be strictly positive");
  const Polygon body = wulff_shape(h);
  std::vector<double> terms(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    terms[i] = mu.weight(i) * std::pow(body.support(mu.direction(i)), e.p);
  return pairwise_sum(terms) / e.p + quermassintegral(body, e.q);
}

double el_residual(const Polygon& body, const DiscreteMeasure& mu, Exponents e) {
  if (mu.size() == 0) throw InvalidArgumentError("measure has no atoms");
  const DiscreteMeasure mass = measure_of_polygon(body, e);
  std::vector<double> matched(mu.size(), 0.0);
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (mass.weight(j) <= kFacetDrop) continue;
    const std::size_t i = nearest_atom(mu.directions(), mass.direction(j));
    if (circular_distance(mu.direction(i), mass.direction(j)) <= kDirectionMatchTol) {
      matched[i] += mass.weight(j);
    } else if (mass.weight(j) > kFacetComplain) {
      throw FacetMismatchError("facet at angle " + std::to_string(mass.direction(j)) +
                               " with mass " + std::to_string(mass.weight(j)) +
                               " has no matching atom");
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    worst = std::max(worst, std::abs(matched[i] - mu.weight(i)) / mu.weight(i));
  return worst;
}

DiskSearch best_disk(const DiscreteMeasure& mu, Exponents e, std::size_t grid_n) {
  require_positive_exponents(e);
  validate_grid_size(grid_n);
  const double W = mu.total();
  const auto F = tail_evaluator(e.q);
  auto value = [&](double r) { return W * std::pow(r, e.p) / e.p + kTwoPi * (*F)(r); };

  const double lo = 0.02, hi = 8.0;
  const int scan = 240;
  double best_r = lo, best_v = value(lo);
  for (int i = 1; i <= scan; ++i) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(i) / scan);
    const double v = value(r);
    if (v < best_v) {
      best_v = v;
      best_r = r;
    }
  }
  // golden-section refinement inside the bracketing scan cells
  double a = best_r / std::pow(hi / lo, 1.0 / scan);
  double b = best_r * std::pow(hi / lo, 1.0 / scan);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = value(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = value(x2);
    }
  }
  const double r = 0.5 * (a + b);
  return {r, value(r)};
}

VariationalResult solve_variational(const VariationalParams& params, const DiscreteMeasure& mu_in) {
  require_positive_exponents(params.exps);
  validate_grid_size(params.grid_n);
  if (!(params.step_init > 0.0)) throw InvalidArgumentError("step_init must be positive");
  if (!(params.grad_eps > 0.0 && params.grad_eps < 0.1))
    throw InvalidArgumentError("grad_eps must lie in (0, 0.1)");
  if (!(params.el_tol > 0.0)) throw InvalidArgumentError("el_tol must be positive");
  if (params.max_iters < 1) throw InvalidArgumentError("max_iters must be at least 1");

  const std::size_t n = params.grid_n;
  const std::size_t m = n / 2;
  const Exponents e = params.exps;

  const DiscreteMeasure mu = snap_to_grid(mu_in, n);
  if (!mu.is_even()) throw InvalidArgumentError("measure must be even (antipode-symmetric)");
  if (!mu.is_spread())
    throw NotSpreadError("measure is concentrated in a closed half circle; the objective has no "
                         "minimizer over bodies");

  const DiskSearch disk = best_disk(mu, e, n);
  const double r0 = params.initial_radius > 0.0 ? params.initial_radius : disk.radius;

  auto mirror = [m, n](const std::vector<double>& x) {
    std::vector<double> h(n);
    for (std::size_t j = 0; j < m; ++j) h[j] = h[j + m] = x[j];
    return h;
  };

  long evals = 0;
  auto phi_of = [&](const std::vector<double>& x) {
    ++evals;
    return objective_phi(GridFunction(mirror(x)), mu, e);
  };
  auto phi_or_inf = [&](const std::vector<double>& x) {
    for (double v : x)
      if (!(v > 0.0)) return std::numeric_limits<double>::infinity();
    try {
      return phi_of(x);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  std::vector<double> x(m, r0);
  double phi_cur = phi_of(x);
  const double phi_at_disk = phi_cur;

  // mode-k damping for the descent direction: inverse of the 1 + k^2 growth
  // of the objective's spectral stiffness
  std::vector<double> smooth_mult(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k)
    smooth_mult[k] = 1.0 / (1.0 + static_cast<double>(k) * static_cast<double>(k));

  auto make_result = [&](const std::vector<double>& xv, double phi_v, double el_v, long iters) {
    Polygon poly = wulff_shape(GridFunction(mirror(xv)));
    VariationalReport rep;
    rep.iterations = iters;
    rep.objective_evals = evals;
    rep.objective = phi_v;
    rep.el_res = el_v;
    rep.disk_objective = phi_at_disk;
    rep.initial_radius = r0;
    return VariationalResult{std::move(poly), GridFunction(mirror(xv)), rep};
  };

  std::vector<double> best_x = x;
  double best_el = std::numeric_limits<double>::infinity();
  double best_phi = phi_cur;

  double step = params.step_init;
  std::vector<double> grad(m), x_try(m);

  for (long iter = 0; iter < params.max_iters; ++iter) {
    const Polygon poly = wulff_shape(GridFunction(mirror(x)));
    double el;
    try {
      el = el_residual(poly, mu, e);
    } catch (const FacetMismatchError&) {
      el = std::numeric_limits<double>::infinity();  // spurious facets: keep descending
    }
    if (el < best_el || (el == best_el && phi_cur < best_phi)) {
      best_el = el;
      best_phi = phi_cur;
      best_x = x;
    }
    if (el < params.el_tol) return make_result(x, phi_cur, el, iter);

    // central differences on the antipodally identified coordinates
    parallel_for(m, [&](std::size_t j) {
      const double dx = std::min(params.grad_eps * std::max(x[j], 1e-3), 0.5 * x[j]);
      auto probe = [&](double xj) {
        std::vector<double> xs = x;
        xs[j] = xj;
        try {
          return objective_phi(GridFunction(mirror(xs)), mu, e);
        } catch (const Error&) {
          return phi_cur;  // degenerate probe: treat as flat
        }
      };
      grad[j] = (probe(x[j] + dx) - probe(x[j] - dx)) / (2.0 * dx);
    });
    evals += 2 * static_cast<long>(m);

    // smooth the direction mode-by-mode so high harmonics do not force a
    // tiny step for the whole vector
    std::vector<double> dir_full = apply_spectral_multiplier(mirror(grad), smooth_mult);
    std::vector<double> dir(m);
    for (std::size_t j = 0; j < m; ++j) dir[j] = -0.5 * (dir_full[j] + dir_full[j + m]);
    // the objective is only one-sided differentiable where a support plane
    // leaves the hull; zero any component the smoothing pushed uphill against
    // its own finite-difference slope, or the first-order cut cost swamps the
    // second-order gain at every step length
    for (std::size_t j = 0; j < m; ++j)
      if (dir[j] * grad[j] > 0.0) dir[j] = 0.0;

    double grad_sup = 0.0;
    for (double g : grad) grad_sup = std::max(grad_sup, std::abs(g));
    if (grad_sup == 0.0)
      throw MaxItersWithIterate("gradient vanished before the mass match reached tolerance",
                                make_result(best_x, best_phi, best_el, iter));

    // backtracking line search; step carries over and may grow again
    step = std::min(step * 2.0, 1e3);
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t j = 0; j < m; ++j) x_try[j] = x[j] + step * dir[j];
      const double phi_try = phi_or_inf(x_try);
      if (phi_try < phi_cur) {
        // canonicalize through the Wulff shape; the objective is unchanged
        // (mirror() already lands in the even subspace)
        const Polygon q = wulff_shape(even_symmetrize(GridFunction(mirror(x_try))));
        const GridFunction canon = q.support_grid(n);
        for (std::size_t j = 0; j < m; ++j) x[j] = 0.5 * (canon[j] + canon[j + m]);
        phi_cur = phi_try;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      throw MaxItersWithIterate("line search stalled before the mass match reached tolerance",
                                make_result(best_x, best_phi, best_el, iter));
  }

  throw MaxItersWithIterate("iteration budget exhausted",
                            make_result(best_x, best_phi, best_el, params.max_iters));
}

}  // namespace minkflow

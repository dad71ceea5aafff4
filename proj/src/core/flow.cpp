#include "core/flow.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "core/errors.hpp"
#include "core/gauss_integrals.hpp"
#include "core/parallel.hpp"

namespace minkflow {

namespace {

constexpr double kPhiSlack = 1e-10;
constexpr double kMultiplierFloor = 1e-12;
constexpr long kStepBudget = 50'000'000;

// x^e with fast paths for the exponents the solvers actually hit
inline double pow_e(double x, double e) {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return x;
  if (e == 2.0) return x * x;
  if (e == 0.5) return std::sqrt(x);
  if (e == -1.0) return 1.0 / x;
  if (e == 1.5) return x * std::sqrt(x);
  if (e == -0.5) return 1.0 / std::sqrt(x);
  if (e == 3.0) return x * x * x;
  return std::pow(x, e);
}

struct StateView {
  const std::vector<double>& h;
  const std::vector<double>& d1;
  const std::vector<double>& d2;
};

double convexity_margin_of(const std::vector<double>& h, double eps_param) {
  if (eps_param >= 0.0) return eps_param;
  double mx = h[0];
  for (double v : h) mx = std::max(mx, v);
  return 1e-8 * mx;
}

// velocity + stiffness of a state; returns false (with a reason) when the
// state leaves the admissible cone
bool eval_velocity(const StateView& st, const GridFunction& f, Exponents e, double eps_param,
                   double h_cap, double h_floor, std::vector<double>& v, double& s_max,
                   std::string& why) {
  const std::size_t n = st.h.size();
  v.resize(n);
  s_max = 0.0;
  const double eps = convexity_margin_of(st.h, eps_param);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = st.h[i];
    if (!(h > 0.0)) {
      why = "support function lost positivity";
      return false;
    }
    if (h < h_floor) {
      why = "support function fell below the collapse floor";
      return false;
    }
    if (h > h_cap) {
      why = "support function exceeded the cap";
      return false;
    }
    const double b = st.d2[i] + h;
    if (!(b > eps)) {
      why = "convexity margin violated";
      return false;
    }
    const double rho2 = h * h + st.d1[i] * st.d1[i];
    const double grad = f[i] * pow_e(h, e.p) * std::exp(0.5 * rho2) * pow_e(rho2, 0.5 * (2.0 - e.q));
    const double vi = h - grad / b;
    if (!std::isfinite(vi)) {
      why = "velocity overflow";
      return false;
    }
    v[i] = vi;
    s_max = std::max(s_max, grad / (b * b));
  }
  return true;
}

double phi_of_state(const StateView& st, const GridFunction& f, Exponents e,
                    const TailEvaluator& F) {
  const std::size_t n = st.h.size();
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = st.h[i];
    const double rho2 = h * h + st.d1[i] * st.d1[i];
    const double b = st.d2[i] + h;
    terms[i] = f[i] * support_antiderivative(h, e.p) + F(std::sqrt(rho2)) * h * b / rho2;
  }
  return pairwise_sum(terms) * (2.0 * std::numbers::pi / static_cast<double>(n));
}

double residual_of_state(const StateView& st, const GridFunction& f, Exponents e) {
  const std::size_t n = st.h.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = st.h[i];
    const double rho2 = h * h + st.d1[i] * st.d1[i];
    const double b = st.d2[i] + h;
    const double density =
        std::exp(-0.5 * rho2) * pow_e(h, 1.0 - e.p) * pow_e(rho2, 0.5 * (e.q - 2.0)) * b;
    worst = std::max(worst, std::abs(density / f[i] - 1.0));
  }
  return worst;
}

void state_extrema(const StateView& st, TraceRow& row) {
  row.h_min = row.h_max = st.h[0];
  row.b_min = row.b_max = st.d2[0] + st.h[0];
  for (std::size_t i = 1; i < st.h.size(); ++i) {
    row.h_min = std::min(row.h_min, st.h[i]);
    row.h_max = std::max(row.h_max, st.h[i]);
    const double b = st.d2[i] + st.h[i];
    row.b_min = std::min(row.b_min, b);
    row.b_max = std::max(row.b_max, b);
  }
}

}  // namespace

GridFunction flow_velocity(const ConvexBody& body, const GridFunction& f, Exponents e) {
  if (body.size() != f.size()) throw InvalidArgumentError("body and density grids differ in size");
  if (!(f.min_value() > 0.0)) throw NotPositiveError("target density must be strictly positive");
  std::vector<double> v;
  double s_max = 0.0;
  std::string why;
  StateView st{body.support().values(), body.d1(), body.d2()};
  if (!eval_velocity(st, f, e, -1.0, std::numeric_limits<double>::infinity(), 0.0, v, s_max, why))
    throw DomainError("velocity undefined: " + why);
  return GridFunction(std::move(v));
}

double radial_velocity(const ConvexBody& body, const GridFunction& f, Exponents e, double u) {
  if (body.size() != f.size()) throw InvalidArgumentError("body and density grids differ in size");
  const double xi = body.normal_angle(u);
  const TrigInterpolant hi(body.support());
  double h, dh, d2h;
  hi.eval_jet(xi, h, dh, d2h);
  const double b = d2h + h;
  if (!(h > 0.0) || !(b > 0.0)) throw DomainError("interpolated boundary data degenerate");
  const double rho = std::hypot(h, dh);
  const double fxi = TrigInterpolant(f).eval(xi);
  return rho - fxi * pow_e(h, e.p - 1.0) * pow_e(rho, 3.0 - e.q) * std::exp(0.5 * rho * rho) / b;
}

double lyapunov_value(const ConvexBody& body, const GridFunction& f, Exponents e) {
  if (body.size() != f.size()) throw InvalidArgumentError("body and density grids differ in size");
  const auto F = tail_evaluator(e.q);
  StateView st{body.support().values(), body.d1(), body.d2()};
  return phi_of_state(st, f, e, *F);
}

double ma_residual(const ConvexBody& body, const GridFunction& f, Exponents e) {
  if (body.size() != f.size()) throw InvalidArgumentError("body and density grids differ in size");
  if (!(f.min_value() > 0.0)) throw NotPositiveError("target density must be strictly positive");
  StateView st{body.support().values(), body.d1(), body.d2()};
  return residual_of_state(st, f, e);
}

AdmissibilityInterval check_admissibility(const GridFunction& f, Exponents e) {
  AdmissibilityInterval band;
  band.lower = 0.0;
  if (e.q < e.p)
    band.upper = std::numeric_limits<double>::infinity();
  else if (e.q == e.p)
    band.upper = 1.0;
  else
    band.upper = 0.0;
  band.ok = f.min_value() > band.lower && f.max_value() < band.upper;
  return band;
}

FlowResult run_flow(const FlowParams& params, const GridFunction& f, const GridFunction& initial,
                    FlowTrace* trace) {
  if (!(params.dt_safety > 0.0 && params.dt_safety < 1.0))
    throw InvalidArgumentError("dt_safety must lie in (0, 1)");
  if (!(params.residual_tol > 0.0)) throw InvalidArgumentError("residual_tol must be positive");
  if (!(params.max_time > 0.0)) throw InvalidArgumentError("max_time must be positive");
  if (params.snapshot_stride < 1) throw InvalidArgumentError("snapshot_stride must be >= 1");
  if (!(params.h_cap > 0.0)) throw InvalidArgumentError("h_cap must be positive");
  if (!(params.h_floor >= 0.0) || !(params.h_floor < params.h_cap))
    throw InvalidArgumentError("h_floor must be non-negative and below h_cap");
  if (f.size() != initial.size())
    throw InvalidArgumentError("density and initial grids differ in size");
  if (!(f.min_value() > 0.0)) throw NotPositiveError("target density must be strictly positive");

  const std::size_t n = f.size();
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(n);
  const Exponents e = params.exps;
  const auto F = tail_evaluator(e.q);

  // initial state must be a valid body
  ConvexBody(initial, params.eps_convex);

  std::vector<double> h = initial.values(), d1, d2;
  spectral_derivatives(h, d1, d2);

  FlowResult result;
  result.h = initial;
  result.phi = phi_of_state({h, d1, d2}, f, e, *F);
  result.residual = residual_of_state({h, d1, d2}, f, e);

  auto record = [&](double t) {
    if (!trace) return;
    if (!trace->rows.empty() && trace->rows.back().t == t) return;
    TraceRow row;
    row.t = t;
    row.phi = result.phi;
    row.residual = result.residual;
    state_extrema({h, d1, d2}, row);
    trace->rows.push_back(row);
    trace->snapshots.push_back(GridFunction(h));
  };
  record(0.0);

  double t = 0.0;
  double multiplier = 1.0;
  int consecutive_accepts = 0;
  std::string last_reject = "step size collapsed";

  std::vector<double> k1, k2, k3, k4, stage, cand, cd1, cd2;
  double s_max = 0.0;
  std::string why;

  for (;;) {
    if (result.residual < params.residual_tol) {
      result.outcome = FlowOutcome::Converged;
      break;
    }
    if (t >= params.max_time) {
      result.outcome = FlowOutcome::Timeout;
      break;
    }
    if (result.accepted_steps + result.rejected_steps >= kStepBudget) {
      result.outcome = FlowOutcome::Diverged;
      result.diagnostic = "step budget exhausted";
      break;
    }

    if (!eval_velocity({h, d1, d2}, f, e, params.eps_convex, params.h_cap, params.h_floor, k1,
                       s_max, why)) {
      result.outcome = FlowOutcome::Diverged;
      result.diagnostic = why;
      break;
    }
    if (multiplier < kMultiplierFloor) {
      result.outcome = FlowOutcome::Diverged;
      result.diagnostic = "time step collapsed: " + last_reject;
      break;
    }

    const double dt = std::min(multiplier * params.dt_safety * dtheta * dtheta / std::max(s_max, 1e-300),
                               params.max_time - t);

    bool ok = true;
    auto stage_velocity = [&](const std::vector<double>& base, double scale,
                              const std::vector<double>& k, std::vector<double>& out) {
      stage.resize(n);
      for (std::size_t i = 0; i < n; ++i) stage[i] = base[i] + scale * k[i];
      std::vector<double> sd1, sd2;
      spectral_derivatives(stage, sd1, sd2);
      double ignored;
      return eval_velocity({stage, sd1, sd2}, f, e, params.eps_convex, params.h_cap, params.h_floor,
                           out, ignored, why);
    };

    ok = stage_velocity(h, 0.5 * dt, k1, k2) && stage_velocity(h, 0.5 * dt, k2, k3) &&
         stage_velocity(h, dt, k3, k4);

    double phi_new = 0.0, residual_new = 0.0;
    if (ok) {
      cand.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        cand[i] = h[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      spectral_derivatives(cand, cd1, cd2);
      std::vector<double> unused;
      double s_ignored;
      ok = eval_velocity({cand, cd1, cd2}, f, e, params.eps_convex, params.h_cap, params.h_floor,
                         unused, s_ignored, why);
      if (ok) {
        phi_new = phi_of_state({cand, cd1, cd2}, f, e, *F);
        residual_new = residual_of_state({cand, cd1, cd2}, f, e);
        if (!(phi_new <= result.phi + kPhiSlack)) {
          ok = false;
          why = "descent functional increased";
        }
      }
    }

    if (!ok) {
      ++result.rejected_steps;
      last_reject = why;
      multiplier *= 0.5;
      consecutive_accepts = 0;
      continue;
    }

    h.swap(cand);
    d1.swap(cd1);
    d2.swap(cd2);
    t += dt;
    ++result.accepted_steps;
    result.max_phi_increase = std::max(result.max_phi_increase, phi_new - result.phi);
    if (phi_new > result.phi + kPhiSlack) ++result.phi_violations;
    result.phi = phi_new;
    result.residual = residual_new;
    if (++consecutive_accepts >= 10) {
      multiplier = std::min(multiplier * 1.2, 1.0);
      consecutive_accepts = 0;
    }
    if (result.accepted_steps % static_cast<long>(params.snapshot_stride) == 0) record(t);
  }

  result.time = t;
  result.h = GridFunction(h);
  record(t);
  return result;
}

UniquenessReport uniqueness_harness(const FlowParams& params, const GridFunction& f,
                                    const std::vector<GridFunction>& initials) {
  if (!(params.exps.q < params.exps.p))
    throw DomainError("uniqueness harness requires q < p");
  if (initials.size() < 2) throw InvalidArgumentError("need at least two initial bodies");

  std::vector<FlowResult> results(initials.size());
  parallel_for(initials.size(), [&](std::size_t i) {
    results[i] = run_flow(params, f, initials[i], nullptr);
  });

  UniquenessReport report;
  report.runs.reserve(results.size());
  bool all_converged = true;
  for (const FlowResult& r : results) {
    report.runs.push_back({r.outcome, r.residual});
    all_converged = all_converged && r.outcome == FlowOutcome::Converged;
  }
  for (std::size_t a = 0; a < results.size(); ++a)
    for (std::size_t b = a + 1; b < results.size(); ++b) {
      double sup = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i)
        sup = std::max(sup, std::abs(results[a].h[i] - results[b].h[i]));
      report.max_pairwise_sup = std::max(report.max_pairwise_sup, sup);
    }
  report.pass = all_converged && report.max_pairwise_sup < 10.0 * params.residual_tol;
  return report;
}

}  // namespace minkflow

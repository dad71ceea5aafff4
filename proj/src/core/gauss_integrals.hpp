#pragma once

#include <memory>
#include <vector>

#include "core/quadrature.hpp"

namespace minkflow {

class ConvexBody;
class Polygon;

// F(s) = integral over [s, infinity) of exp(-r^2/2) r^(q-1) dr, by adaptive
// Simpson on a truncated range.  s must be > 0; s = 0 is allowed when q > 0.
double tail_integral(double s, double q);

// Antiderivative of the radial integrand fixed as -F, so the primitive
// vanishes at infinity.
double radial_antiderivative(double r, double q);

// Antiderivative of t^(p-1): t^p/p, with the log branch at p = 0.  t > 0.
double support_antiderivative(double t, double p);

// Fast evaluator for F at fixed q: piecewise Chebyshev proxy of the ratio to
// exp(-s^2/2) s^(q-2), falling back to direct quadrature outside its range.
// Proxy error is below 1e-12 in relative terms on the covered range.
class TailEvaluator {
 public:
  explicit TailEvaluator(double q);
  double operator()(double s) const;
  double q() const { return q_; }

 private:
  double q_;
  std::vector<ChebyshevProxy> pieces_;
};

// Process-wide shared evaluators, keyed by exact q.
std::shared_ptr<const TailEvaluator> tail_evaluator(double q);

// Gaussian-tail volume functional: integral of F(radial function) over the circle
// of directions.  The grid-body version uses the trapezoid rule after the
// change of variables to outer normal angle; the polygon version integrates
// each vertex-to-vertex arc with a doubling Gauss-Legendre rule.
double quermassintegral(const ConvexBody& body, double q);
double quermassintegral(const Polygon& poly, double q);

}  // namespace minkflow

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace minkflow {

// Deterministic pairwise reduction; summation order is a function of n only.
double pairwise_sum(const double* x, std::size_t n);
double pairwise_sum(const std::vector<double>& x);

namespace detail {

inline double simpson_panel(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class Fn>
double adaptive_simpson_rec(Fn& f, double a, double fa, double b, double fb, double m, double fm,
                            double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_panel(a, fa, m, fm, flm);
  const double right = simpson_panel(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with absolute tolerance; panels are halved until the local
// error estimate |S2 - S1| meets the budget.
template <class Fn>
double adaptive_simpson(Fn&& f, double a, double b, double abs_tol, int max_depth = 48) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = detail::simpson_panel(a, fa, b, fb, fm);
  return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

// Gauss-Legendre rule on [-1, 1]; nodes/weights cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

// Integrates f over [a, b] with a fixed-order rule.
template <class Fn>
double gauss_integrate(Fn&& f, double a, double b, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::vector<double> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    terms[i] = rule.weights[i] * f(c + h * rule.nodes[i]);
  return h * pairwise_sum(terms);
}

// Chebyshev interpolant of a smooth function on [a, b].
class ChebyshevProxy {
 public:
  template <class Fn>
  static ChebyshevProxy fit(Fn&& f, double a, double b, int degree) {
    ChebyshevProxy p;
    p.a_ = a;
    p.b_ = b;
    const int n = degree + 1;
    std::vector<double> fv(n);
    constexpr double pi = 3.14159265358979323846;
    for (int j = 0; j < n; ++j) {
      const double x = std::cos(pi * (j + 0.5) / n);
      fv[j] = f(0.5 * (a + b) + 0.5 * (b - a) * x);
    }
    p.coef_.resize(n);
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += fv[j] * std::cos(pi * k * (j + 0.5) / n);
      p.coef_[k] = 2.0 * s / n;
    }
    p.coef_[0] *= 0.5;
    return p;
  }

  double eval(double x) const;
  double lo() const { return a_; }
  double hi() const { return b_; }

 private:
  double a_ = 0.0, b_ = 1.0;
  std::vector<double> coef_;
};

// Monotone (Fritsch-Carlson) cubic interpolation through a periodic table.
// xs must be strictly increasing with xs.back() - xs.front() < period; the
// table repeats with the given period in x and value shift dy per period.
class PeriodicPchip {
 public:
  PeriodicPchip(std::vector<double> xs, std::vector<double> ys, double period, double dy_per_period);
  double eval(double x) const;

 private:
  std::vector<double> xs_, ys_, slopes_;
  double period_, dy_;
};

}  // namespace minkflow

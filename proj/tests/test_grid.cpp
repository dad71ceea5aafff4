// Periodic grid machinery: spectral derivatives, interpolation, expression
// sampling.  Trigonometric polynomials below the Nyquist mode must come back
// to machine precision; everything else is checked against closed forms.
#include <cmath>
#include <numbers>
#include <vector>

#include "core/errors.hpp"
#include "core/expression.hpp"
#include "core/grid_function.hpp"
#include "core/quadrature.hpp"
#include "doctest.h"

using namespace minkflow;

namespace {
constexpr double kPi = std::numbers::pi;

GridFunction sample(std::size_t n, double (*fn)(double)) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = fn(2.0 * kPi * static_cast<double>(i) / n);
  return GridFunction(std::move(v));
}
}  // namespace

TEST_CASE("grid size contract") {
  CHECK_THROWS_AS(GridFunction(std::vector<double>(15, 1.0)), InvalidArgumentError);
  CHECK_THROWS_AS(GridFunction(std::vector<double>(17, 1.0)), InvalidArgumentError);
  CHECK_THROWS_AS(validate_grid_size(0), InvalidArgumentError);
  CHECK_NOTHROW(validate_grid_size(16));
  const GridFunction g = GridFunction::constant(32, 2.5);
  CHECK(g.size() == 32);
  CHECK(g.min_value() == 2.5);
  CHECK(g.max_value() == 2.5);
  CHECK(g.theta(8) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(g.delta_theta() == doctest::Approx(2 * kPi / 32).epsilon(1e-15));
  std::vector<double> bad(16, 1.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(GridFunction(std::move(bad)), InvalidArgumentError);
}

TEST_CASE("spectral derivative exact on trig polynomials") {
  const std::size_t n = 64;
  const GridFunction g = sample(n, +[](double t) { return std::cos(3 * t) - 2 * std::sin(5 * t); });
  const GridFunction d1 = spectral_derivative(g, 1);
  const GridFunction d2 = spectral_derivative(g, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = g.theta(i);
    CHECK(d1[i] == doctest::Approx(-3 * std::sin(3 * t) - 10 * std::cos(5 * t)).epsilon(1e-12));
    CHECK(d2[i] == doctest::Approx(-9 * std::cos(3 * t) + 50 * std::sin(5 * t)).epsilon(1e-12));
  }
}

TEST_CASE("raw-buffer derivatives match the GridFunction path") {
  const std::size_t n = 32;
  const GridFunction g = sample(n, +[](double t) { return 1.0 + 0.3 * std::cos(2 * t); });
  std::vector<double> d1, d2;
  spectral_derivatives(g.values(), d1, d2);
  const GridFunction e1 = spectral_derivative(g, 1);
  const GridFunction e2 = spectral_derivative(g, 2);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(d1[i] == doctest::Approx(e1[i]).epsilon(1e-15));
    CHECK(d2[i] == doctest::Approx(e2[i]).epsilon(1e-15));
  }
}

TEST_CASE("spectral multiplier scales single modes") {
  const std::size_t n = 32;
  std::vector<double> mult(n / 2 + 1, 1.0);
  mult[3] = 0.25;
  mult[0] = 2.0;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2 * kPi * static_cast<double>(i) / n;
    v[i] = 1.5 + std::cos(3 * t) + 0.5 * std::sin(7 * t);
  }
  const std::vector<double> out = apply_spectral_multiplier(v, mult);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2 * kPi * static_cast<double>(i) / n;
    CHECK(out[i] ==
          doctest::Approx(3.0 + 0.25 * std::cos(3 * t) + 0.5 * std::sin(7 * t)).epsilon(1e-13));
  }
}

TEST_CASE("even symmetrize averages antipodes") {
  const std::size_t n = 48;
  const GridFunction g =
      sample(n, +[](double t) { return 1.0 + 0.4 * std::cos(2 * t) + 0.3 * std::sin(3 * t); });
  const GridFunction s = even_symmetrize(g);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = g.theta(i);
    // odd harmonics cancel
    CHECK(s[i] == doctest::Approx(1.0 + 0.4 * std::cos(2 * t)).epsilon(1e-13));
    CHECK(s[i] == doctest::Approx(s[(i + n / 2) % n]).epsilon(1e-15));
  }
}

TEST_CASE("trig interpolant reproduces values and derivatives off-grid") {
  const std::size_t n = 64;
  const GridFunction g =
      sample(n, +[](double t) { return 2.0 + 0.2 * std::cos(4 * t) + 0.1 * std::sin(2 * t); });
  const TrigInterpolant interp(g);
  for (double t : {0.0, 0.123, 2.71, 5.5, -1.3, 9.0}) {
    double f, df, d2f;
    interp.eval_jet(t, f, df, d2f);
    CHECK(f == doctest::Approx(2.0 + 0.2 * std::cos(4 * t) + 0.1 * std::sin(2 * t)).epsilon(1e-12));
    CHECK(df == doctest::Approx(-0.8 * std::sin(4 * t) + 0.2 * std::cos(2 * t)).epsilon(1e-12));
    CHECK(d2f == doctest::Approx(-3.2 * std::cos(4 * t) - 0.4 * std::sin(2 * t)).epsilon(1e-11));
    CHECK(interp.eval(t) == doctest::Approx(f).epsilon(1e-15));
  }
}

TEST_CASE("pairwise sum is deterministic and accurate") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / static_cast<double>(i + 1);
  const double s1 = pairwise_sum(v);
  const double s2 = pairwise_sum(v.data(), v.size());
  CHECK(s1 == s2);
  CHECK(s1 == doctest::Approx(7.4854708605503449).epsilon(1e-14));  // harmonic number H_1000
  CHECK(pairwise_sum(nullptr, 0) == 0.0);
}

TEST_CASE("adaptive simpson and gauss rules hit closed forms") {
  // int_0^1 exp(-x) dx = 1 - 1/e
  const double exact = 1.0 - std::exp(-1.0);
  CHECK(adaptive_simpson([](double x) { return std::exp(-x); }, 0.0, 1.0, 1e-12) ==
        doctest::Approx(exact).epsilon(1e-11));
  CHECK(gauss_integrate([](double x) { return std::exp(-x); }, 0.0, 1.0, 16) ==
        doctest::Approx(exact).epsilon(1e-14));
  // polynomial exactness: order-8 rule integrates x^15 exactly
  CHECK(gauss_integrate([](double x) { return std::pow(x, 15); }, 0.0, 1.0, 8) ==
        doctest::Approx(1.0 / 16).epsilon(1e-13));
}

TEST_CASE("chebyshev proxy approximates a smooth function") {
  const auto p = ChebyshevProxy::fit([](double x) { return std::exp(-x * x / 2); }, 0.5, 3.0, 40);
  for (double x : {0.5, 0.7, 1.9, 2.99}) {
    CHECK(p.eval(x) == doctest::Approx(std::exp(-x * x / 2)).epsilon(1e-14));
  }
}

TEST_CASE("periodic pchip interpolates monotone tables") {
  // table of x^ with one full period and linear drift per period
  std::vector<double> xs{0.0, 1.0, 2.5, 4.0, 5.0};
  std::vector<double> ys{0.0, 0.5, 1.8, 2.9, 3.6};
  const PeriodicPchip interp(xs, ys, 2 * kPi, 4.0);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(interp.eval(xs[i]) == doctest::Approx(ys[i]).epsilon(1e-14));
  // periodic shift invariance
  CHECK(interp.eval(1.0 + 2 * kPi) == doctest::Approx(0.5 + 4.0).epsilon(1e-13));
  CHECK(interp.eval(1.0 - 2 * kPi) == doctest::Approx(0.5 - 4.0).epsilon(1e-13));
  // monotone between the nodes
  double prev = interp.eval(0.0);
  for (int k = 1; k <= 100; ++k) {
    const double cur = interp.eval(5.0 * k / 100);
    CHECK(cur >= prev - 1e-14);
    prev = cur;
  }
}

TEST_CASE("expression grammar evaluates and samples") {
  const Expression e = Expression::parse("exp(-0.5)*(1 + 0.05*cos(2*theta))");
  CHECK(e.eval(0.0) == doctest::Approx(std::exp(-0.5) * 1.05).epsilon(1e-15));
  CHECK(e.eval(kPi / 2) == doctest::Approx(std::exp(-0.5) * 0.95).epsilon(1e-15));
  const GridFunction g = e.sample(32);
  for (std::size_t i = 0; i < 32; ++i)
    CHECK(g[i] ==
          doctest::Approx(std::exp(-0.5) * (1 + 0.05 * std::cos(2 * g.theta(i)))).epsilon(1e-15));

  CHECK(Expression::parse("pi").eval(0.3) == doctest::Approx(kPi).epsilon(1e-16));
  CHECK(Expression::parse("-2*-3").eval(0.0) == doctest::Approx(6.0).epsilon(1e-16));
  CHECK(Expression::parse("1 - 2 - 3").eval(0.0) == doctest::Approx(-4.0).epsilon(1e-16));
  CHECK(Expression::parse("sin(theta)*sin(theta)").eval(1.1) ==
        doctest::Approx(std::sin(1.1) * std::sin(1.1)).epsilon(1e-15));
  CHECK(Expression::parse("1e-3").eval(0.0) == doctest::Approx(1e-3).epsilon(1e-16));
}

TEST_CASE("expression rejects bad input and aperiodic samples") {
  CHECK_THROWS_AS(Expression::parse(""), ParseError);
  CHECK_THROWS_AS(Expression::parse("2/3"), ParseError);
  CHECK_THROWS_AS(Expression::parse("cos(theta"), ParseError);
  CHECK_THROWS_AS(Expression::parse("bogus(theta)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("1 2"), ParseError);
  // parses fine but is not 2*pi periodic, so sampling refuses
  const Expression lin = Expression::parse("theta");
  CHECK(lin.eval(2.0) == doctest::Approx(2.0).epsilon(1e-16));
  CHECK_THROWS_AS(lin.sample(32), ParseError);
  CHECK_THROWS_AS(Expression::parse("cos(0.5*theta)").sample(32), ParseError);
}

#pragma once

#include <cstddef>
#include <vector>

namespace minkflow {

// Periodic samples on the uniform circle grid theta_i = 2*pi*i/n.
// n must be even and >= 16; all values must be finite.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(std::vector<double> values);
  static GridFunction constant(std::size_t n, double value);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  double theta(std::size_t i) const;
  double delta_theta() const;

  double min_value() const;
  double max_value() const;

 private:
  std::vector<double> values_;
};

// Checks the grid-size contract (even, >= 16) without building an object.
void validate_grid_size(std::size_t n);

// Fourier-multiplier differentiation; exact for trigonometric polynomials of
// degree < n/2.  order is 1 or 2.  The first-derivative Nyquist mode is
// dropped; the second derivative keeps it with multiplier -(n/2)^2.
GridFunction spectral_derivative(const GridFunction& g, int order);

// Raw-buffer variant used in solver inner loops; d1/d2 are resized to v.size().
void spectral_derivatives(const std::vector<double>& v, std::vector<double>& d1,
                          std::vector<double>& d2);

// Scales Fourier mode k of v by multiplier(k), k = 0 .. n/2 (n/2 is the
// Nyquist mode).  Used e.g. to smooth descent directions mode-by-mode.
std::vector<double> apply_spectral_multiplier(const std::vector<double>& v,
                                              const std::vector<double>& multiplier);

// Antipodal average: out(theta) = (g(theta) + g(theta + pi)) / 2.
GridFunction even_symmetrize(const GridFunction& g);

// Trigonometric interpolant through the samples; evaluates the function and
// its first two derivatives at arbitrary angles, consistent with
// spectral_derivative at grid points.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const GridFunction& g);
  double eval(double theta) const;
  // value, first, second derivative in one pass
  void eval_jet(double theta, double& f, double& df, double& d2f) const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double nyquist_ = 0.0;                  // coefficient of cos(n/2 * theta)
  std::vector<double> cos_coef_, sin_coef_;  // k = 1 .. n/2-1
};

}  // namespace minkflow

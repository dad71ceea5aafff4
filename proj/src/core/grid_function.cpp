#include "core/grid_function.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "core/errors.hpp"

namespace minkflow {

namespace {

// FFTW planning is not thread safe; execution on thread-owned buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanSet {
  std::size_t n = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  explicit PlanSet(std::size_t size) : n(size) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    real = fftw_alloc_real(n);
    spec = fftw_alloc_complex(n / 2 + 1);
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, spec, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, real, FFTW_ESTIMATE);
  }
  ~PlanSet() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    if (real) fftw_free(real);
    if (spec) fftw_free(spec);
  }
  PlanSet(const PlanSet&) = delete;
  PlanSet& operator=(const PlanSet&) = delete;
};

PlanSet& plans_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<PlanSet>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<PlanSet>(n)).first;
  return *it->second;
}

void forward_fft(const std::vector<double>& v, PlanSet& ps) {
  std::copy(v.begin(), v.end(), ps.real);
  fftw_execute(ps.fwd);
}

}  // namespace

void validate_grid_size(std::size_t n) {
  if (n < 16 || n % 2 != 0)
    throw InvalidArgumentError("grid size must be even and at least 16, got " + std::to_string(n));
}

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  validate_grid_size(values_.size());
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidArgumentError("grid function has a non-finite value");
}

GridFunction GridFunction::constant(std::size_t n, double value) {
  validate_grid_size(n);
  return GridFunction(std::vector<double>(n, value));
}

double GridFunction::theta(std::size_t i) const {
  return 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(values_.size());
}

double GridFunction::delta_theta() const {
  return 2.0 * std::numbers::pi / static_cast<double>(values_.size());
}

double GridFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

GridFunction spectral_derivative(const GridFunction& g, int order) {
  if (order != 1 && order != 2) throw InvalidArgumentError("derivative order must be 1 or 2");
  std::vector<double> d1, d2;
  spectral_derivatives(g.values(), d1, d2);
  return GridFunction(order == 1 ? std::move(d1) : std::move(d2));
}

void spectral_derivatives(const std::vector<double>& v, std::vector<double>& d1,
                          std::vector<double>& d2) {
  const std::size_t n = v.size();
  validate_grid_size(n);
  PlanSet& ps = plans_for(n);
  forward_fft(v, ps);

  const std::size_t half = n / 2;
  std::vector<fftw_complex> saved(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    saved[k][0] = ps.spec[k][0];
    saved[k][1] = ps.spec[k][1];
  }

  const double scale = 1.0 / static_cast<double>(n);

  // first derivative: multiply by i*k, drop the Nyquist mode
  for (std::size_t k = 0; k <= half; ++k) {
    const double kk = static_cast<double>(k);
    if (k == half) {
      ps.spec[k][0] = 0.0;
      ps.spec[k][1] = 0.0;
    } else {
      const double re = saved[k][0], im = saved[k][1];
      ps.spec[k][0] = -kk * im;
      ps.spec[k][1] = kk * re;
    }
  }
  fftw_execute(ps.inv);
  d1.resize(n);
  for (std::size_t i = 0; i < n; ++i) d1[i] = ps.real[i] * scale;

  // second derivative: multiply by -k^2 (Nyquist kept, real multiplier)
  for (std::size_t k = 0; k <= half; ++k) {
    const double m = -static_cast<double>(k) * static_cast<double>(k);
    ps.spec[k][0] = m * saved[k][0];
    ps.spec[k][1] = m * saved[k][1];
  }
  fftw_execute(ps.inv);
  d2.resize(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = ps.real[i] * scale;
}

std::vector<double> apply_spectral_multiplier(const std::vector<double>& v,
                                              const std::vector<double>& multiplier) {
  const std::size_t n = v.size();
  validate_grid_size(n);
  const std::size_t half = n / 2;
  if (multiplier.size() != half + 1)
    throw InvalidArgumentError("need one multiplier per mode, 0 through n/2");
  PlanSet& ps = plans_for(n);
  forward_fft(v, ps);
  for (std::size_t k = 0; k <= half; ++k) {
    ps.spec[k][0] *= multiplier[k];
    ps.spec[k][1] *= multiplier[k];
  }
  fftw_execute(ps.inv);
  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = ps.real[i] * scale;
  return out;
}

GridFunction even_symmetrize(const GridFunction& g) {
  const std::size_t n = g.size();
  const std::size_t half = n / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (g[i] + g[(i + half) % n]);
  return GridFunction(std::move(out));
}

TrigInterpolant::TrigInterpolant(const GridFunction& g) : n_(g.size()) {
  PlanSet& ps = plans_for(n_);
  forward_fft(g.values(), ps);
  const std::size_t half = n_ / 2;
  const double inv_n = 1.0 / static_cast<double>(n_);
  mean_ = ps.spec[0][0] * inv_n;
  nyquist_ = ps.spec[half][0] * inv_n;
  cos_coef_.resize(half - 1);
  sin_coef_.resize(half - 1);
  for (std::size_t k = 1; k < half; ++k) {
    cos_coef_[k - 1] = 2.0 * inv_n * ps.spec[k][0];
    sin_coef_[k - 1] = -2.0 * inv_n * ps.spec[k][1];
  }
}

double TrigInterpolant::eval(double theta) const {
  double f, df, d2f;
  eval_jet(theta, f, df, d2f);
  return f;
}

void TrigInterpolant::eval_jet(double theta, double& f, double& df, double& d2f) const {
  const std::size_t half = n_ / 2;
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = 1.0, sk = 0.0;  // cos(k theta), sin(k theta), starting at k=0
  f = mean_;
  df = 0.0;
  d2f = 0.0;
  for (std::size_t k = 1; k < half; ++k) {
    const double c = ck * c1 - sk * s1;
    const double s = sk * c1 + ck * s1;
    ck = c;
    sk = s;
    const double a = cos_coef_[k - 1], b = sin_coef_[k - 1];
    const double kk = static_cast<double>(k);
    f += a * c + b * s;
    df += kk * (b * c - a * s);
    d2f += -kk * kk * (a * c + b * s);
  }
  // Nyquist mode enters as a pure cosine; its first derivative vanishes at
  // grid points, matching the dropped mode in spectral_derivatives.
  const double kh = static_cast<double>(half);
  const double ch = std::cos(kh * theta), sh = std::sin(kh * theta);
  f += nyquist_ * ch;
  df += -kh * nyquist_ * sh;
  d2f += -kh * kh * nyquist_ * ch;
}

}  // namespace minkflow

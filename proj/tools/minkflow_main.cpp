// Command-line front end over the C API: solver orchestration, batch sweeps,
// and consistency checks, with deterministic text outputs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "minkflow.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

// config / usage problem: exit 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// operation failed with a library error that is not a config problem
struct RunError : std::runtime_error {
  mf_status status;
  RunError(mf_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_ok(mf_status s, const std::string& what) {
  if (s != MF_OK) throw RunError(s, what + ": " + mf_last_error());
}

// every failure while assembling inputs is a config problem
void require_cfg(mf_status s, const std::string& what) {
  if (s != MF_OK) throw ConfigError(what + ": " + mf_last_error());
}

template <typename T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  explicit Handle(T* p) : p_(p) {}
  ~Handle() { reset(); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& o) noexcept : p_(o.p_) { o.p_ = nullptr; }
  Handle& operator=(Handle&& o) noexcept {
    if (this != &o) {
      reset();
      p_ = o.p_;
      o.p_ = nullptr;
    }
    return *this;
  }
  void reset() {
    if (p_) Free(p_);
    p_ = nullptr;
  }
  T** out() {
    reset();
    return &p_;
  }
  T* get() const { return p_; }
  operator T*() const { return p_; }

 private:
  T* p_ = nullptr;
};

using GridHandle = Handle<mf_grid, mf_grid_free>;
using BodyHandle = Handle<mf_body, mf_body_free>;
using PolygonHandle = Handle<mf_polygon, mf_polygon_free>;
using MeasureHandle = Handle<mf_measure, mf_measure_free>;
using TraceHandle = Handle<mf_trace, mf_trace_free>;
using ExpressionHandle = Handle<mf_expression, mf_expression_free>;

// ---- flat "section.key = value" config --------------------------------------

class Config {
 public:
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const std::string trimmed = trim(line);
      if (trimmed.empty() || trimmed[0] == '#') continue;
      const std::size_t eq = trimmed.find('=');
      if (eq == std::string::npos)
        throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'section.key = value'");
      const std::string key = trim(trimmed.substr(0, eq));
      const std::string value = trim(trimmed.substr(eq + 1));
      if (key.empty() || key.find('.') == std::string::npos)
        throw ConfigError(path + ":" + std::to_string(lineno) + ": key must look like 'section.key'");
      kv_[key] = value;
    }
  }

  void apply_overrides(const std::vector<std::string>& sets) {
    for (const std::string& s : sets) {
      const std::size_t eq = s.find('=');
      if (eq == std::string::npos)
        throw ConfigError("--set needs 'section.key=value', got '" + s + "'");
      kv_[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
    }
  }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string get_string(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required config key '" + key + "'");
    consumed_.insert(key);
    return it->second;
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    return has(key) ? get_string(key) : fallback;
  }

  double get_double(const std::string& key) { return to_double(key, get_string(key)); }
  double get_double(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
  }

  long get_long(const std::string& key, long fallback) {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    try {
      std::size_t used = 0;
      const long x = std::stol(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
  }

  bool get_bool(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    if (v == "1" || v == "true") return true;
    if (v == "0" || v == "false") return false;
    throw ConfigError("config key '" + key + "': expected 0/1/true/false, got '" + v + "'");
  }

  void reject_unknown() const {
    for (const auto& [key, value] : kv_)
      if (!consumed_.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }

 private:
  static std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
  }

  double to_double(const std::string& key, const std::string& v) {
    try {
      std::size_t used = 0;
      const double x = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      if (!std::isfinite(x)) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': expected a finite number, got '" + v + "'");
    }
  }

  std::map<std::string, std::string> kv_;
  std::set<std::string> consumed_;
};

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  for (const std::string& l : lines) out << l << "\n";
  if (!out.flush()) throw ConfigError("write to '" + path + "' failed");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

int thread_budget() {
  if (const char* env = std::getenv("MINKFLOW_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// ---- shared input assembly ---------------------------------------------------

GridHandle sample_expression(const std::string& text, std::size_t n, const std::string& what) {
  ExpressionHandle expr;
  require_cfg(mf_expression_parse(text.c_str(), expr.out()), what);
  GridHandle grid;
  require_cfg(mf_expression_sample(expr, n, grid.out()), what);
  return grid;
}

// density from either an expression or a grid file; fixes the grid size
GridHandle load_density(Config& cfg, const std::string& section, std::size_t grid_n) {
  const bool have_expr = cfg.has(section + ".f");
  const bool have_file = cfg.has(section + ".f_file");
  if (have_expr == have_file)
    throw ConfigError("provide exactly one of '" + section + ".f' and '" + section + ".f_file'");
  if (have_expr)
    return sample_expression(cfg.get_string(section + ".f"), grid_n, "target density");
  GridHandle grid;
  require_cfg(mf_grid_read(cfg.get_string(section + ".f_file").c_str(), grid.out()),
              "target density file");
  return grid;
}

std::vector<std::string> flow_summary_lines(const mf_flow_report& rep, const mf_grid* f, double p,
                                            double q) {
  const char* status = rep.outcome == MF_FLOW_CONVERGED  ? "converged"
                       : rep.outcome == MF_FLOW_TIMEOUT ? "timeout"
                                                         : "diverged";
  double lo = 0.0, hi = 0.0;
  int ok = 0;
  require_ok(mf_admissibility(f, p, q, &lo, &hi, &ok), "admissibility");
  std::vector<std::string> lines;
  lines.push_back(std::string("status = ") + status);
  lines.push_back("residual = " + fmt17(rep.residual));
  lines.push_back("phi = " + fmt17(rep.phi));
  lines.push_back("time = " + fmt17(rep.time));
  lines.push_back("accepted_steps = " + std::to_string(rep.accepted_steps));
  lines.push_back("rejected_steps = " + std::to_string(rep.rejected_steps));
  lines.push_back("phi_violations = " + std::to_string(rep.phi_violations));
  lines.push_back("max_phi_increase = " + fmt17(rep.max_phi_increase));
  lines.push_back("admissible_lower = " + fmt17(lo));
  lines.push_back("admissible_upper = " + fmt17(hi));
  lines.push_back(std::string("admissible = ") + (ok ? "yes" : "no"));
  if (rep.diagnostic[0] != '\0') lines.push_back(std::string("diagnostic = ") + rep.diagnostic);
  return lines;
}

struct FlowInputs {
  mf_flow_params params{};
  GridHandle initial;
  GridHandle f;
};

// consumes the flow.* keys and assembles solver inputs
FlowInputs parse_flow_inputs(Config& cfg, double p, double q) {
  FlowInputs in;
  mf_flow_params_init(&in.params);
  in.params.p = p;
  in.params.q = q;
  in.params.dt_safety = cfg.get_double("flow.dt_safety", in.params.dt_safety);
  in.params.residual_tol = cfg.get_double("flow.residual_tol", in.params.residual_tol);
  in.params.max_time = cfg.get_double("flow.max_time", in.params.max_time);
  in.params.snapshot_stride = cfg.get_long("flow.snapshot_stride", in.params.snapshot_stride);
  in.params.eps_convex = cfg.get_double("flow.eps_convex", in.params.eps_convex);
  in.params.h_cap = cfg.get_double("flow.h_cap", in.params.h_cap);
  in.params.h_floor = cfg.get_double("flow.h_floor", in.params.h_floor);

  const long grid_n = cfg.get_long("flow.grid_n", 256);
  if (grid_n < 16) throw ConfigError("flow.grid_n must be at least 16");

  if (cfg.has("flow.initial_file")) {
    require_cfg(mf_grid_read(cfg.get_string("flow.initial_file").c_str(), in.initial.out()),
                "initial body file");
  } else {
    const double r = cfg.get_double("flow.initial_radius", 1.0);
    require_cfg(mf_grid_constant(static_cast<std::size_t>(grid_n), r, in.initial.out()),
                "initial body");
  }
  in.f = load_density(cfg, "flow", mf_grid_size(in.initial.get()));
  return in;
}

// solve and write limit/trace/summary (and optional snapshots) to out_dir
mf_flow_report run_flow_to_dir(const FlowInputs& in, const std::string& out_dir,
                               bool write_snapshots) {
  ensure_dir(out_dir);
  GridHandle limit;
  TraceHandle trace;
  mf_flow_report report{};
  require_ok(mf_run_flow(&in.params, in.f, in.initial, limit.out(), trace.out(), &report),
             "flow run");

  require_ok(mf_grid_write((out_dir + "/limit.grid").c_str(), limit), "write limit");
  require_ok(mf_trace_write((out_dir + "/trace.csv").c_str(), trace), "write trace");
  write_lines(out_dir + "/summary.txt",
              flow_summary_lines(report, in.f, in.params.p, in.params.q));
  if (write_snapshots) {
    const std::size_t count = mf_trace_snapshots(trace);
    for (std::size_t i = 0; i < count; ++i) {
      GridHandle snap;
      require_ok(mf_trace_snapshot(trace, i, snap.out()), "trace snapshot");
      char name[64];
      std::snprintf(name, sizeof name, "/snapshot_%06zu.grid", i);
      require_ok(mf_grid_write((out_dir + name).c_str(), snap), "write snapshot");
    }
  }
  return report;
}

// ---- solve-flow --------------------------------------------------------------

int cmd_solve_flow(const std::string& config_path, const std::vector<std::string>& sets) {
  Config cfg;
  cfg.load_file(config_path);
  cfg.apply_overrides(sets);
  const double p = cfg.get_double("flow.p");
  const double q = cfg.get_double("flow.q");
  const std::string out_dir = cfg.get_string("output.dir");
  const bool snapshots = cfg.get_bool("output.snapshots", false);
  const FlowInputs inputs = parse_flow_inputs(cfg, p, q);
  cfg.reject_unknown();

  const auto t0 = std::chrono::steady_clock::now();
  mf_flow_report report{};
  try {
    report = run_flow_to_dir(inputs, out_dir, snapshots);
  } catch (const RunError& e) {
    // solver-level validation failures are config problems at the CLI surface
    throw ConfigError(e.what());
  }
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - t0;

  const char* status = report.outcome == MF_FLOW_CONVERGED  ? "converged"
                       : report.outcome == MF_FLOW_TIMEOUT ? "timeout"
                                                            : "diverged";
  std::cout << "status: " << status << "  residual: " << fmt17(report.residual)
            << "  steps: " << report.accepted_steps << "\n";
  std::cout << "wall_seconds: " << wall.count() << "\n";
  if (report.outcome == MF_FLOW_DIVERGED) return 3;
  if (report.outcome == MF_FLOW_TIMEOUT) return 4;
  return 0;
}

// ---- solve-variational -------------------------------------------------------

int cmd_solve_variational(const std::string& config_path, const std::vector<std::string>& sets) {
  Config cfg;
  cfg.load_file(config_path);
  cfg.apply_overrides(sets);

  mf_variational_params params;
  mf_variational_params_init(&params);
  params.p = cfg.get_double("variational.p");
  params.q = cfg.get_double("variational.q");
  const long grid_n = cfg.get_long("variational.grid_n", 256);
  if (grid_n < 16) throw ConfigError("variational.grid_n must be at least 16");
  params.grid_n = static_cast<std::size_t>(grid_n);
  params.step_init = cfg.get_double("variational.step_init", params.step_init);
  params.grad_eps = cfg.get_double("variational.grad_eps", params.grad_eps);
  params.el_tol = cfg.get_double("variational.el_tol", params.el_tol);
  params.max_iters = cfg.get_long("variational.max_iters", params.max_iters);
  params.initial_radius = cfg.get_double("variational.initial_radius", params.initial_radius);

  MeasureHandle mu;
  require_cfg(mf_measure_read_degrees(cfg.get_string("variational.atoms_file").c_str(), mu.out()),
              "atom file");
  const std::string out_dir = cfg.get_string("output.dir");
  cfg.reject_unknown();
  ensure_dir(out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  PolygonHandle body;
  GridHandle support;
  mf_variational_report rep{};
  const mf_status status = mf_solve_variational(&params, mu, body.out(), support.out(), &rep);
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - t0;

  if (status != MF_OK && status != MF_ERR_MAX_ITERS) {
    if (status == MF_ERR_NOT_SPREAD) {
      std::cerr << "error: " << mf_last_error() << "\n";
      return 5;
    }
    throw ConfigError(std::string("variational solve: ") + mf_last_error());
  }

  require_ok(mf_polygon_write((out_dir + "/solution.poly").c_str(), body), "write solution");
  require_ok(mf_grid_write((out_dir + "/support.grid").c_str(), support), "write support");
  std::vector<std::string> lines;
  lines.push_back(std::string("status = ") + (status == MF_OK ? "ok" : "max_iters"));
  lines.push_back("iterations = " + std::to_string(rep.iterations));
  lines.push_back("objective = " + fmt17(rep.objective));
  lines.push_back("el_residual = " + fmt17(rep.el_res));
  lines.push_back("objective_evals = " + std::to_string(rep.objective_evals));
  lines.push_back("disk_objective = " + fmt17(rep.disk_objective));
  lines.push_back("initial_radius = " + fmt17(rep.initial_radius));
  if (rep.diagnostic[0] != '\0') lines.push_back(std::string("diagnostic = ") + rep.diagnostic);
  write_lines(out_dir + "/report.txt", lines);

  std::cout << "status: " << (status == MF_OK ? "ok" : "max_iters")
            << "  el_residual: " << fmt17(rep.el_res) << "  iterations: " << rep.iterations
            << "\n";
  std::cout << "wall_seconds: " << wall.count() << "\n";
  return status == MF_OK ? 0 : 6;
}

// ---- measure -----------------------------------------------------------------

int cmd_measure(const std::string& config_path, const std::vector<std::string>& sets) {
  Config cfg;
  cfg.load_file(config_path);
  cfg.apply_overrides(sets);
  const double p = cfg.get_double("measure.p");
  const double q = cfg.get_double("measure.q");
  const std::string body_path = cfg.get_string("measure.body_file");
  const std::string out_dir = cfg.get_string("output.dir");
  const double eps_convex = cfg.get_double("measure.eps_convex", -1.0);
  cfg.reject_unknown();

  int is_grid = 0;
  require_cfg(mf_sniff_grid_file(body_path.c_str(), &is_grid), "body file");
  ensure_dir(out_dir);

  std::vector<std::string> lines;
  if (is_grid) {
    GridHandle h;
    require_cfg(mf_grid_read(body_path.c_str(), h.out()), "body file");
    BodyHandle body;
    require_cfg(mf_body_create(h, eps_convex, body.out()), "body file");
    GridHandle density;
    require_ok(mf_measure_density(body, p, q, density.out()), "measure density");
    require_ok(mf_density_write((out_dir + "/density.csv").c_str(), density), "write density");
    double mass = 0.0, vq = 0.0;
    require_ok(mf_density_total_mass(density, &mass), "total mass");
    require_ok(mf_quermassintegral_body(body, q, &vq), "quermassintegral");
    lines.push_back("kind = density");
    lines.push_back("total_mass = " + fmt17(mass));
    lines.push_back("quermassintegral = " + fmt17(vq));
  } else {
    PolygonHandle poly;
    require_cfg(mf_polygon_read(body_path.c_str(), poly.out()), "body file");
    MeasureHandle atoms;
    require_ok(mf_measure_of_polygon(poly, p, q, atoms.out()), "measure atoms");
    require_ok(mf_measure_write((out_dir + "/atoms.csv").c_str(), atoms), "write atoms");
    double mass = 0.0, vq = 0.0;
    require_ok(mf_measure_total(atoms, &mass), "total mass");
    require_ok(mf_quermassintegral_polygon(poly, q, &vq), "quermassintegral");
    lines.push_back("kind = atoms");
    lines.push_back("total_mass = " + fmt17(mass));
    lines.push_back("quermassintegral = " + fmt17(vq));
  }
  write_lines(out_dir + "/summary.txt", lines);
  std::cout << "wrote " << (is_grid ? "density" : "atoms") << " to " << out_dir << "\n";
  return 0;
}

// ---- check -------------------------------------------------------------------

struct CheckRow {
  std::string name;
  bool pass;
  std::string detail;
};

void print_check_table(const std::vector<CheckRow>& rows) {
  for (const CheckRow& r : rows)
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  " << r.detail << "\n";
}

int cmd_check(const std::string& name, double p, double q, const std::string& f_text,
              const std::string& body_file, double t_step, double tol, long grid_n,
              const std::string& ms_text, double order_needed) {
  std::vector<CheckRow> rows;
  if (name == "variational-formula") {
    GridHandle f = sample_expression(f_text.empty() ? "1.0" : f_text,
                                     static_cast<std::size_t>(grid_n), "density");
    double out[3] = {0, 0, 0};
    if (!body_file.empty()) {
      int is_grid = 0;
      require_cfg(mf_sniff_grid_file(body_file.c_str(), &is_grid), "body file");
      if (is_grid) {
        GridHandle h;
        require_cfg(mf_grid_read(body_file.c_str(), h.out()), "body file");
        BodyHandle body;
        require_cfg(mf_body_create(h, -1.0, body.out()), "body file");
        require_ok(mf_verify_variational_body(body, f, p, q, t_step, out), "difference quotient");
      } else {
        PolygonHandle poly;
        require_cfg(mf_polygon_read(body_file.c_str(), poly.out()), "body file");
        require_ok(mf_verify_variational_polygon(poly, f, p, q, t_step, out),
                   "difference quotient");
      }
    } else {
      GridHandle h;
      require_cfg(mf_grid_constant(static_cast<std::size_t>(grid_n), 1.0, h.out()), "disk body");
      BodyHandle body;
      require_cfg(mf_body_create(h, -1.0, body.out()), "disk body");
      require_ok(mf_verify_variational_body(body, f, p, q, t_step, out), "difference quotient");
    }
    rows.push_back({"variational-formula", out[2] < tol,
                    "lhs=" + fmt17(out[0]) + " rhs=" + fmt17(out[1]) +
                        " rel_gap=" + fmt17(out[2]) + " tol=" + fmt17(tol)});
  } else if (name == "weak-convergence") {
    GridHandle h;
    BodyHandle body;
    if (body_file.empty()) {
      require_cfg(mf_grid_constant(static_cast<std::size_t>(grid_n), 1.0, h.out()), "disk body");
    } else {
      require_cfg(mf_grid_read(body_file.c_str(), h.out()), "body file");
    }
    require_cfg(mf_body_create(h, -1.0, body.out()), "target body");
    GridHandle test_fn = sample_expression(f_text.empty() ? "1.0" : f_text,
                                           mf_grid_size(h.get()), "test function");
    std::vector<std::size_t> ms;
    {
      std::stringstream ss(ms_text);
      std::string tok;
      while (std::getline(ss, tok, ',')) ms.push_back(std::stoul(tok));
    }
    if (ms.size() < 2) throw ConfigError("--ms needs at least two comma-separated counts");
    std::vector<double> values(ms.size()), errors(ms.size());
    require_ok(mf_weak_convergence_body(body, test_fn, p, q, ms.data(), ms.size(), values.data(),
                                        errors.data()),
               "tangent-polygon study");
    // least-squares slope of log(error) against log(m)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const double x = std::log(static_cast<double>(ms[i]));
      const double y = std::log(std::max(errors[i], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(ms.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double observed_order = -slope;
    std::string detail = "order=" + fmt17(observed_order) + " need>=" + fmt17(order_needed);
    for (std::size_t i = 0; i < ms.size(); ++i)
      detail += " e[" + std::to_string(ms[i]) + "]=" + fmt17(errors[i]);
    rows.push_back({"weak-convergence", observed_order >= order_needed, detail});
  } else if (name == "uniqueness") {
    mf_flow_params params;
    mf_flow_params_init(&params);
    params.p = p;
    params.q = q;
    GridHandle f = sample_expression(f_text.empty() ? "exp(-0.5)" : f_text,
                                     static_cast<std::size_t>(grid_n), "density");
    const std::size_t n = mf_grid_size(f.get());
    GridHandle a, b, c;
    require_cfg(mf_grid_constant(n, 0.7, a.out()), "initial");
    require_cfg(mf_grid_constant(n, 1.5, b.out()), "initial");
    {
      std::vector<double> ell(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double th = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        const double cx = 1.2 * std::cos(th), cy = 0.8 * std::sin(th);
        ell[i] = std::sqrt(cx * cx + cy * cy);
      }
      require_cfg(mf_grid_create(ell.data(), n, c.out()), "initial");
    }
    const mf_grid* initials[3] = {a.get(), b.get(), c.get()};
    double max_pairwise = 0.0;
    int all_converged = 0, pass = 0;
    require_ok(mf_uniqueness_check(&params, f, initials, 3, &max_pairwise, &all_converged, &pass),
               "uniqueness harness");
    rows.push_back({"uniqueness", pass != 0,
                    "max_pairwise_sup=" + fmt17(max_pairwise) +
                        " all_converged=" + (all_converged ? std::string("yes") : "no")});
  } else if (name == "admissibility") {
    GridHandle f = sample_expression(f_text.empty() ? "exp(-0.5)" : f_text,
                                     static_cast<std::size_t>(grid_n), "density");
    double lo = 0.0, hi = 0.0;
    int ok = 0;
    require_ok(mf_admissibility(f, p, q, &lo, &hi, &ok), "admissibility");
    rows.push_back({"admissibility", ok != 0,
                    "interval=(" + fmt17(lo) + "," + fmt17(hi) + ")"});
  } else {
    std::cerr << "error: unknown check '" << name << "'\n";
    return 2;
  }

  print_check_table(rows);
  for (const CheckRow& r : rows)
    if (!r.pass) return 1;
  return 0;
}

// ---- sweep -------------------------------------------------------------------

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError(what + ": bad number '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

std::string run_dir_name(double p, double q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "p%g_q%g", p, q);
  return buf;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& sets) {
  Config base;
  base.load_file(config_path);
  base.apply_overrides(sets);
  const std::vector<double> ps = parse_list(base.get_string("sweep.p_values"), "sweep.p_values");
  const std::vector<double> qs = parse_list(base.get_string("sweep.q_values"), "sweep.q_values");
  const std::string out_dir = base.get_string("output.dir");
  ensure_dir(out_dir);

  struct Job {
    double p, q;
    std::string dir;
    int outcome = -1;
    std::string message;
  };
  std::vector<Job> jobs;
  for (double pv : ps)
    for (double qv : qs) jobs.push_back({pv, qv, out_dir + "/" + run_dir_name(pv, qv), -1, ""});

  // validate the shared keys once, against the first job, before fanning out
  {
    Config probe;
    probe.load_file(config_path);
    probe.apply_overrides(sets);
    probe.get_string("sweep.p_values");
    probe.get_string("sweep.q_values");
    probe.get_string("output.dir");
    probe.get_bool("output.snapshots", false);
    parse_flow_inputs(probe, ps.front(), qs.front());
    probe.reject_unknown();
  }

  const int workers = std::min<int>(thread_budget(), static_cast<int>(jobs.size()));
  std::mutex next_mutex;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t mine;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= jobs.size()) return;
        mine = next++;
      }
      Job& job = jobs[mine];
      try {
        Config cfg;
        cfg.load_file(config_path);
        cfg.apply_overrides(sets);
        const bool snapshots = cfg.get_bool("output.snapshots", false);
        const FlowInputs inputs = parse_flow_inputs(cfg, job.p, job.q);
        job.outcome = run_flow_to_dir(inputs, job.dir, snapshots).outcome;
      } catch (const std::exception& e) {
        job.outcome = -2;
        job.message = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  std::vector<std::string> index;
  bool any_error = false, any_diverged = false, any_timeout = false;
  for (const Job& job : jobs) {
    std::string status;
    switch (job.outcome) {
      case MF_FLOW_CONVERGED:
        status = "converged";
        break;
      case MF_FLOW_TIMEOUT:
        status = "timeout";
        any_timeout = true;
        break;
      case MF_FLOW_DIVERGED:
        status = "diverged";
        any_diverged = true;
        break;
      default:
        status = "error: " + job.message;
        any_error = true;
        break;
    }
    index.push_back(run_dir_name(job.p, job.q) + " = " + status);
  }
  write_lines(out_dir + "/index.txt", index);
  for (const std::string& line : index) std::cout << line << "\n";
  if (any_error) return 2;
  if (any_diverged) return 3;
  if (any_timeout) return 4;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar Gauss-weighted curvature solvers"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;

  CLI::App* solve_flow = app.add_subcommand("solve-flow", "march the support flow to a limit body");
  solve_flow->add_option("config", config_path, "config file")->required();
  solve_flow->add_option("--set", sets, "override 'section.key=value'");

  CLI::App* solve_var =
      app.add_subcommand("solve-variational", "minimize the support objective for atom data");
  solve_var->add_option("config", config_path, "config file")->required();
  solve_var->add_option("--set", sets, "override 'section.key=value'");

  CLI::App* measure = app.add_subcommand("measure", "emit the curvature measure of a body");
  measure->add_option("config", config_path, "config file")->required();
  measure->add_option("--set", sets, "override 'section.key=value'");

  std::string check_name, check_f, check_body, check_ms = "32,64,128,256";
  double check_p = 2.0, check_q = 1.0, check_t_step = 1e-4, check_tol = 1e-4, check_order = 1.8;
  long check_n = 256;
  CLI::App* check = app.add_subcommand("check", "run a named consistency check");
  check->add_option("name", check_name,
                    "variational-formula | weak-convergence | uniqueness | admissibility")
      ->required();
  check->add_option("--p", check_p, "first exponent");
  check->add_option("--q", check_q, "second exponent");
  check->add_option("--f", check_f, "density expression");
  check->add_option("--body-file", check_body, "body file (grid samples or vertices)");
  check->add_option("--t-step", check_t_step, "difference-quotient step");
  check->add_option("--tol", check_tol, "pass tolerance");
  check->add_option("--n", check_n, "grid size");
  check->add_option("--ms", check_ms, "tangent-polygon counts, comma separated");
  check->add_option("--order", check_order, "required empirical order");

  CLI::App* sweep = app.add_subcommand("sweep", "fan a flow config over exponent lists");
  sweep->add_option("config", config_path, "config file")->required();
  sweep->add_option("--set", sets, "override 'section.key=value'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve_flow->parsed()) return cmd_solve_flow(config_path, sets);
    if (solve_var->parsed()) return cmd_solve_variational(config_path, sets);
    if (measure->parsed()) return cmd_measure(config_path, sets);
    if (check->parsed())
      return cmd_check(check_name, check_p, check_q, check_f, check_body, check_t_step, check_tol,
                       check_n, check_ms, check_order);
    if (sweep->parsed()) return cmd_sweep(config_path, sets);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RunError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

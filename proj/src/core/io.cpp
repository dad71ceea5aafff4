#include "core/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "core/errors.hpp"

namespace minkflow::io {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

double parse_number(const std::string& s, const std::string& path, std::size_t lineno) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || !end || *end != '\0')
    throw ParseError("'" + path + "' line " + std::to_string(lineno + 1) +
                     ": malformed number '" + s + "'");
  return v;
}

std::pair<double, double> parse_pair(const std::string& line, const std::string& path,
                                     std::size_t lineno) {
  const std::size_t comma = line.find(',');
  if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
    throw ParseError("'" + path + "' line " + std::to_string(lineno + 1) +
                     ": expected exactly two comma-separated fields");
  return {parse_number(line.substr(0, comma), path, lineno),
          parse_number(line.substr(comma + 1), path, lineno)};
}

void require_header(const std::vector<std::string>& lines, const std::string& header,
                    const std::string& path) {
  if (lines.empty() || lines[0] != header)
    throw ParseError("'" + path + "': expected header '" + header + "'");
}

// rows under a "theta,<name>" header; verifies the uniform grid
std::vector<double> read_theta_table(const std::string& path, const std::string& header) {
  const auto lines = read_lines(path);
  require_header(lines, header, path);
  const std::size_t n = lines.size() - 1;
  validate_grid_size(n);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [theta, v] = parse_pair(lines[i + 1], path, i + 1);
    const double expect = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    if (std::abs(theta - expect) > 1e-9)
      throw ParseError("'" + path + "' line " + std::to_string(i + 2) +
                       ": angle off the uniform grid");
    values[i] = v;
  }
  return values;
}

std::string theta_table(const GridFunction& g, const std::string& header) {
  std::ostringstream out;
  out << header << "\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    out << format_double(g.theta(i)) << "," << format_double(g[i]) << "\n";
  return out.str();
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_grid_function(const std::string& path, const GridFunction& g) {
  write_text(path, theta_table(g, "theta,value"));
}

GridFunction read_grid_function(const std::string& path) {
  return GridFunction(read_theta_table(path, "theta,value"));
}

void write_polygon(const std::string& path, const Polygon& p) {
  std::ostringstream out;
  for (std::size_t i = 0; i < p.size(); ++i)
    out << format_double(p.vertex(i).x) << "," << format_double(p.vertex(i).y) << "\n";
  write_text(path, out.str());
}

Polygon read_polygon(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<Vec2> vertices;
  vertices.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto [x, y] = parse_pair(lines[i], path, i);
    vertices.push_back({x, y});
  }
  return Polygon(std::move(vertices));
}

bool looks_like_grid_function(const std::string& path) {
  const auto lines = read_lines(path);
  return !lines.empty() && lines[0] == "theta,value";
}

void write_measure_atoms(const std::string& path, const DiscreteMeasure& mu) {
  std::ostringstream out;
  out << "theta,weight\n";
  for (std::size_t i = 0; i < mu.size(); ++i)
    out << format_double(mu.direction(i)) << "," << format_double(mu.weight(i)) << "\n";
  write_text(path, out.str());
}

DiscreteMeasure read_measure_atoms(const std::string& path) {
  const auto lines = read_lines(path);
  require_header(lines, "theta,weight", path);
  std::vector<double> dirs, weights;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [d, w] = parse_pair(lines[i], path, i);
    dirs.push_back(d);
    weights.push_back(w);
  }
  return DiscreteMeasure(std::move(dirs), std::move(weights));
}

void write_density(const std::string& path, const GridFunction& density) {
  write_text(path, theta_table(density, "theta,density"));
}

GridFunction read_density(const std::string& path) {
  return GridFunction(read_theta_table(path, "theta,density"));
}

void write_atoms_degrees(const std::string& path, const DiscreteMeasure& mu) {
  std::ostringstream out;
  out << "theta_degrees,weight\n";
  for (std::size_t i = 0; i < mu.size(); ++i)
    out << format_double(mu.direction(i) * 180.0 / std::numbers::pi) << ","
        << format_double(mu.weight(i)) << "\n";
  write_text(path, out.str());
}

DiscreteMeasure read_atoms_degrees(const std::string& path) {
  auto lines = read_lines(path);
  std::size_t first = 0;
  if (!lines.empty() && lines[0] == "theta_degrees,weight") first = 1;
  std::vector<double> dirs, weights;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto [deg, w] = parse_pair(lines[i], path, i);
    dirs.push_back(deg * std::numbers::pi / 180.0);
    weights.push_back(w);
  }
  return DiscreteMeasure(std::move(dirs), std::move(weights));
}

void write_trace(const std::string& path, const std::vector<TraceRow>& rows) {
  std::ostringstream out;
  out << "t,phi,residual,h_min,h_max,b_min,b_max\n";
  for (const TraceRow& r : rows)
    out << format_double(r.t) << "," << format_double(r.phi) << "," << format_double(r.residual)
        << "," << format_double(r.h_min) << "," << format_double(r.h_max) << ","
        << format_double(r.b_min) << "," << format_double(r.b_max) << "\n";
  write_text(path, out.str());
}

std::vector<TraceRow> read_trace(const std::string& path) {
  const auto lines = read_lines(path);
  require_header(lines, "t,phi,residual,h_min,h_max,b_min,b_max", path);
  std::vector<TraceRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    TraceRow r;
    char c;
    if (!(ls >> r.t >> c >> r.phi >> c >> r.residual >> c >> r.h_min >> c >> r.h_max >> c >>
          r.b_min >> c >> r.b_max))
      throw ParseError("'" + path + "' line " + std::to_string(i + 1) + ": malformed trace row");
    rows.push_back(r);
  }
  return rows;
}

void write_key_values(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream out;
  for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
  write_text(path, out.str());
}

std::vector<std::pair<std::string, std::string>> read_key_values(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<std::pair<std::string, std::string>> kv;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::size_t eq = lines[i].find(" = ");
    if (eq == std::string::npos)
      throw ParseError("'" + path + "' line " + std::to_string(i + 1) + ": expected 'key = value'");
    kv.emplace_back(lines[i].substr(0, eq), lines[i].substr(eq + 3));
  }
  return kv;
}

}  // namespace minkflow::io

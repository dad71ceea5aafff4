#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/dual_measure.hpp"
#include "core/flow.hpp"
#include "core/grid_function.hpp"
#include "core/polygon.hpp"

namespace minkflow::io {

// 17 significant digits: doubles survive a write/read round trip exactly.
std::string format_double(double v);

// "theta,value" header, one row per grid point
void write_grid_function(const std::string& path, const GridFunction& g);
GridFunction read_grid_function(const std::string& path);

// one "x,y" vertex per line, counter-clockwise, no header
void write_polygon(const std::string& path, const Polygon& p);
Polygon read_polygon(const std::string& path);

// true when the file starts with a grid-function header rather than vertices
bool looks_like_grid_function(const std::string& path);

// "theta,weight" header (radians)
void write_measure_atoms(const std::string& path, const DiscreteMeasure& mu);
DiscreteMeasure read_measure_atoms(const std::string& path);

// "theta,density" header, values on the uniform grid
void write_density(const std::string& path, const GridFunction& density);
GridFunction read_density(const std::string& path);

// "theta_degrees,weight" rows (header optional on input, written on output)
void write_atoms_degrees(const std::string& path, const DiscreteMeasure& mu);
DiscreteMeasure read_atoms_degrees(const std::string& path);

// "t,phi,residual,h_min,h_max,b_min,b_max" table
void write_trace(const std::string& path, const std::vector<TraceRow>& rows);
std::vector<TraceRow> read_trace(const std::string& path);

// "key = value" lines, in the given order
void write_key_values(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& kv);
std::vector<std::pair<std::string, std::string>> read_key_values(const std::string& path);

}  // namespace minkflow::io

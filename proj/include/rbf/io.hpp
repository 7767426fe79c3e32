#pragma once

#include <string>
#include <vector>

#include "rbf/assembly.hpp"
#include "rbf/fields.hpp"
#include "rbf/fit.hpp"

namespace rbf::io {

// 17 significant digits; round-trips any double exactly.
std::string format_double(double v);
double parse_double(const std::string& cell, const std::string& where);

// Raw comma-separated table. `line` holds the 1-based file line of each row
// (the header is line 1).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line;
};

CsvTable read_csv(const std::string& path);

// Scattered data files: header `x,y,h`.
ScatteredData<double> load_scattered(const std::string& path);
void save_scattered(const ScatteredData<double>& data, const std::string& path);

// Point files: header `x,y` (a trailing `h` column is tolerated and ignored
// on load).
PointSet<double> load_points(const std::string& path);
void save_points(const PointSet<double>& points, const std::string& path);

// Model files: JSON with fixed field names kernel, alpha, method, centers,
// weights, a, a0, diagnostics.
void save_model(const Model<double>& model, const std::string& path);
Model<double> load_model(const std::string& path);

// Plain-text dump of B and f for inspection.
void dump_system(const NormalSystem<double>& system, const std::string& path);

}  // namespace rbf::io

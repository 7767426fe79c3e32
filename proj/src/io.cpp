#include "rbf/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace rbf::io {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  return out;
}

const json& require_field(const json& j, const char* key, const std::string& context) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(context + ": missing field '" + std::string(key) + "'");
  }
  return *it;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& cell, const std::string& where) {
  const std::string s = trim(cell);
  double v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty()) {
    // from_chars rejects "inf"/"nan" spellings in some modes; accept them.
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParseError(where + ": cannot parse number '" + cell + "'");
  }
  return v;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (table.header.empty()) {
      table.header = split_line(line);
    } else {
      table.rows.push_back(split_line(line));
      table.line.push_back(line_no);
    }
  }
  if (table.header.empty()) throw ParseError(path + ": empty file (missing header)");
  return table;
}

ScatteredData<double> load_scattered(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header != std::vector<std::string>{"x", "y", "h"}) {
    throw ParseError(path + ": expected header 'x,y,h'");
  }
  ScatteredData<double> data;
  data.sites.provenance = Provenance::External;
  data.sites.points.resize(static_cast<Index>(table.rows.size()), 2);
  data.values.resize(static_cast<Index>(table.rows.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    const std::string where = path + ": row " + std::to_string(table.line[r]);
    if (cells.size() != 3) throw ParseError(where + ": expected 3 columns, got " + std::to_string(cells.size()));
    const Index i = static_cast<Index>(r);
    data.sites.points(i, 0) = parse_double(cells[0], where);
    data.sites.points(i, 1) = parse_double(cells[1], where);
    data.values(i) = parse_double(cells[2], where);
    if (!std::isfinite(data.sites.points(i, 0)) || !std::isfinite(data.sites.points(i, 1)) ||
        !std::isfinite(data.values(i))) {
      throw ParseError(where + ": non-finite value");
    }
  }
  return data;
}

void save_scattered(const ScatteredData<double>& data, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "x,y,h\n";
  for (Index i = 0; i < data.size(); ++i) {
    out << format_double(data.sites.x(i)) << ',' << format_double(data.sites.y(i)) << ','
        << format_double(data.values(i)) << '\n';
  }
}

PointSet<double> load_points(const std::string& path) {
  const CsvTable table = read_csv(path);
  const bool with_h = table.header == std::vector<std::string>{"x", "y", "h"};
  if (!with_h && table.header != std::vector<std::string>{"x", "y"}) {
    throw ParseError(path + ": expected header 'x,y' or 'x,y,h'");
  }
  PointSet<double> points;
  points.provenance = Provenance::External;
  points.points.resize(static_cast<Index>(table.rows.size()), 2);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    const std::string where = path + ": row " + std::to_string(table.line[r]);
    if (cells.size() != (with_h ? 3u : 2u)) {
      throw ParseError(where + ": expected " + std::to_string(with_h ? 3 : 2) + " columns");
    }
    const Index i = static_cast<Index>(r);
    points.points(i, 0) = parse_double(cells[0], where);
    points.points(i, 1) = parse_double(cells[1], where);
  }
  return points;
}

void save_points(const PointSet<double>& points, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "x,y\n";
  for (Index i = 0; i < points.size(); ++i) {
    out << format_double(points.x(i)) << ',' << format_double(points.y(i)) << '\n';
  }
}

void save_model(const Model<double>& model, const std::string& path) {
  json j;
  j["format"] = "rbf-model/1";
  j["kernel"] = to_string(model.kernel.kind);
  j["alpha"] = model.kernel.alpha;
  j["method"] = to_string(model.method);
  json centers = json::array();
  for (Index i = 0; i < model.centers.size(); ++i) {
    centers.push_back({model.centers.x(i), model.centers.y(i)});
  }
  j["centers"] = std::move(centers);
  j["weights"] = std::vector<double>(model.weights.begin(), model.weights.end());
  j["a"] = {model.a(0), model.a(1)};
  j["a0"] = model.a0;
  j["diagnostics"] = {{"residual_norm", model.diagnostics.residual_norm},
                      {"normal_residual", model.diagnostics.normal_residual},
                      {"condition_estimate", model.diagnostics.condition_estimate},
                      {"ridge_used", model.diagnostics.ridge_used},
                      {"solver_path", to_string(model.diagnostics.solver_path)},
                      {"warning", model.diagnostics.warning}};
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

Model<double> load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
  const std::string context = path;
  try {
    const std::string format = require_field(j, "format", context).get<std::string>();
    if (format != "rbf-model/1") {
      throw ParseError(context + ": unsupported format '" + format + "'");
    }
    const KernelSpec<double> kernel(
        parse_kernel_kind(require_field(j, "kernel", context).get<std::string>()),
        require_field(j, "alpha", context).get<double>());
    const Method method = parse_method(require_field(j, "method", context).get<std::string>());

    const json& jc = require_field(j, "centers", context);
    PointSet<double> centers;
    centers.provenance = Provenance::External;
    centers.points.resize(static_cast<Index>(jc.size()), 2);
    for (Index i = 0; i < centers.size(); ++i) {
      centers.points(i, 0) = jc.at(i).at(0).get<double>();
      centers.points(i, 1) = jc.at(i).at(1).get<double>();
    }

    const auto weights = require_field(j, "weights", context).get<std::vector<double>>();
    if (static_cast<Index>(weights.size()) != centers.size()) {
      throw ParseError(context + ": weights/centers length mismatch");
    }
    const json& ja = require_field(j, "a", context);
    const json& jd = require_field(j, "diagnostics", context);

    FitDiagnostics<double> diag;
    diag.residual_norm = require_field(jd, "residual_norm", context).get<double>();
    diag.normal_residual = require_field(jd, "normal_residual", context).get<double>();
    diag.condition_estimate = require_field(jd, "condition_estimate", context).get<double>();
    diag.ridge_used = require_field(jd, "ridge_used", context).get<double>();
    diag.solver_path = parse_solver_path(require_field(jd, "solver_path", context).get<std::string>());
    diag.warning = jd.value("warning", std::string());

    Model<double> model{kernel,
                        std::move(centers),
                        Eigen::Map<const VectorX<double>>(weights.data(),
                                                          static_cast<Index>(weights.size())),
                        Vector2<double>(ja.at(0).get<double>(), ja.at(1).get<double>()),
                        require_field(j, "a0", context).get<double>(),
                        method,
                        std::move(diag)};
    if (!model.weights.allFinite() || !model.a.allFinite() || !std::isfinite(model.a0)) {
      throw ParseError(context + ": non-finite coefficients");
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError(context + ": malformed model file: " + e.what());
  }
}

void dump_system(const NormalSystem<double>& system, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "method " << to_string(system.method) << '\n';
  out << "B " << system.B.rows() << ' ' << system.B.cols() << '\n';
  for (Index i = 0; i < system.B.rows(); ++i) {
    for (Index j = 0; j < system.B.cols(); ++j) {
      out << (j ? " " : "") << format_double(system.B(i, j));
    }
    out << '\n';
  }
  out << "f " << system.f.size() << '\n';
  for (Index i = 0; i < system.f.size(); ++i) {
    out << (i ? " " : "") << format_double(system.f(i));
  }
  out << '\n';
}

}  // namespace rbf::io

#include "rbf/experiment.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rbf/io.hpp"
#include "rbf/version.hpp"

namespace rbf {

namespace {

using nlohmann::json;

std::string sanitize_cell(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

Index square_side(Index count, const char* what) {
  const auto side = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(count))));
  if (side < 2 || side * side != count) {
    throw std::invalid_argument(std::string(what) + ": count " + std::to_string(count) +
                                " is not a square; pass explicit nx/ny");
  }
  return side;
}

ErrorReport<double> report_for(const Model<double>& model, const ResolvedInputs& in) {
  if (in.eval.kind == EvalSetKind::TrainingPoints) {
    return error_report(model, in.data);
  }
  if (!in.field) {
    throw std::invalid_argument("grid evaluation requires an analytic field (pass --eval-at training)");
  }
  return error_report(model, *in.field, in.eval.nx, in.eval.ny);
}

}  // namespace

std::vector<double> log_spaced(double lo, double hi, Index count) {
  if (!(lo > 0) || !(hi > lo) || count < 2) {
    throw std::invalid_argument("log_spaced: require 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (Index i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] =
        std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_alpha_sweep(KernelKind kind) {
  switch (kind) {
    case KernelKind::Gauss:
      return log_spaced(1e-4, 1e-2, 20);
    case KernelKind::InverseQuadric:
      return log_spaced(5e-4, 5e-2, 20);
    case KernelKind::ThinPlateSpline:
      // Above alpha ~2 the kernel magnitude grows so far past the
      // side-condition block that the two formulations coincide to rounding,
      // which makes their comparison meaningless; the range stays below that.
      return log_spaced(2e-2, 2e0, 20);
  }
  throw std::invalid_argument("default_alpha_sweep: unknown kernel kind");
}

Domain2<double> default_domain(const std::string& field_name) {
  return make_field<double>(field_name).domain;
}

EvalSpec default_eval(const std::string& field_name) {
  if (field_name == "sinc2d") return {EvalSetKind::Grid, 101, 51};
  return {EvalSetKind::Grid, 101, 101};
}

PointSet<double> generate_points(const GeneratorSpec& spec, const Domain2<double>& domain) {
  if (spec.kind == "halton") {
    return halton_points(spec.count, spec.start_index, domain);
  }
  const Index nx = spec.nx > 0 ? spec.nx : square_side(spec.count, "generate_points");
  const Index ny = spec.ny > 0 ? spec.ny : nx;
  if (spec.kind == "grid") {
    return regular_grid(nx, ny, domain);
  }
  if (spec.kind == "epsilon") {
    return epsilon_points(nx, ny, spec.jitter, spec.seed, domain);
  }
  throw std::invalid_argument("unknown point distribution '" + spec.kind +
                              "' (expected halton, epsilon or grid)");
}

ResolvedInputs resolve_inputs(const ExperimentConfig& config) {
  std::optional<Field<double>> field;
  if (!config.field.empty()) field = make_field<double>(config.field);

  std::optional<Domain2<double>> domain = config.domain;
  if (!domain && field) domain = field->domain;

  ScatteredData<double> data;
  if (!config.data_path.empty()) {
    data = io::load_scattered(config.data_path);
    if (data.size() == 0) throw std::invalid_argument(config.data_path + ": no data points");
    if (!domain) {
      domain = Domain2<double>(data.sites.points.col(0).minCoeff(), data.sites.points.col(0).maxCoeff(),
                               data.sites.points.col(1).minCoeff(), data.sites.points.col(1).maxCoeff());
    }
  } else {
    if (!field) throw std::invalid_argument("generating data points requires a field");
    data = sample_field(*field, generate_points(config.data, *domain));
  }

  EvalSpec eval = config.eval;
  if (eval.kind == EvalSetKind::Grid && (eval.nx < 2 || eval.ny < 2)) {
    const EvalSpec def = default_eval(config.field);
    eval.nx = def.nx;
    eval.ny = def.ny;
  }
  return {std::move(data), *domain, eval, std::move(field)};
}

CompareOutcome run_compare(const ExperimentConfig& config) {
  if (config.kernels.size() != 1) {
    throw std::invalid_argument("compare: exactly one kernel expected");
  }
  if (config.alphas.size() != 1) {
    throw std::invalid_argument("compare: exactly one alpha expected");
  }
  const ResolvedInputs in = resolve_inputs(config);
  const PointSet<double> centers = generate_points(config.centers, in.domain);
  const KernelSpec<double> kernel(config.kernels[0], config.alphas[0]);

  Model<double> original = fit(in.data, centers, kernel, config.methods[0], config.fit);
  Model<double> proposed = fit(in.data, centers, kernel, config.methods[1], config.fit);
  ErrorReport<double> ro = report_for(original, in);
  ErrorReport<double> rp = report_for(proposed, in);
  const MeanErrorRatio<double> ratio = mean_error_ratio(ro.mean_abs, rp.mean_abs);
  return {std::move(original), std::move(proposed), ro, rp, ratio};
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  if (config.alphas.size() == 1) {
    throw std::invalid_argument("sweep: need at least 2 alphas (use compare for a single one)");
  }
  const ResolvedInputs in = resolve_inputs(config);

  std::vector<std::string> kinds = config.center_kinds;
  if (kinds.empty()) kinds.push_back(config.centers.kind);

  std::vector<SweepRow> rows;
  for (const KernelKind kernel_kind : config.kernels) {
    const std::vector<double> alphas =
        config.alphas.empty() ? default_alpha_sweep(kernel_kind) : config.alphas;
    for (const std::string& center_kind : kinds) {
      GeneratorSpec center_spec = config.centers;
      center_spec.kind = center_kind;
      const PointSet<double> centers = generate_points(center_spec, in.domain);
      for (const double alpha : alphas) {
        SweepRow row;
        row.kernel = to_string(kernel_kind);
        row.centers = center_kind;
        row.alpha = alpha;
        row.seed_data = config.data.seed;
        row.seed_centers = center_spec.seed;
        try {
          const KernelSpec<double> kernel(kernel_kind, alpha);
          const Model<double> original = fit(in.data, centers, kernel, config.methods[0], config.fit);
          const Model<double> proposed = fit(in.data, centers, kernel, config.methods[1], config.fit);
          const ErrorReport<double> ro = report_for(original, in);
          const ErrorReport<double> rp = report_for(proposed, in);
          row.mean_err_original = ro.mean_abs;
          row.mean_err_proposed = rp.mean_abs;
          row.ratio = mean_error_ratio(ro.mean_abs, rp.mean_abs).value;
          row.max_err_original = ro.max_abs;
          row.max_err_proposed = rp.max_abs;
          row.cond_original = original.diagnostics.condition_estimate;
          row.cond_proposed = proposed.diagnostics.condition_estimate;
          row.ridge_original = original.diagnostics.ridge_used;
          row.ridge_proposed = proposed.diagnostics.ridge_used;
        } catch (const std::exception& e) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          row.mean_err_original = row.mean_err_proposed = row.ratio = nan;
          row.max_err_original = row.max_err_proposed = nan;
          row.cond_original = row.cond_proposed = nan;
          row.ridge_original = row.ridge_proposed = nan;
          row.status = sanitize_cell(std::string("error: ") + e.what());
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << r.kernel << ',' << r.centers << ',' << io::format_double(r.alpha) << ','
        << r.seed_data << ',' << r.seed_centers << ',' << io::format_double(r.mean_err_original)
        << ',' << io::format_double(r.mean_err_proposed) << ',' << io::format_double(r.ratio)
        << ',' << io::format_double(r.max_err_original) << ','
        << io::format_double(r.max_err_proposed) << ',' << io::format_double(r.cond_original)
        << ',' << io::format_double(r.cond_proposed) << ',' << io::format_double(r.ridge_original)
        << ',' << io::format_double(r.ridge_proposed) << ',' << r.status << '\n';
  }
}

std::vector<SweepRow> parse_sweep_csv(const std::string& path) {
  const io::CsvTable table = io::read_csv(path);
  {
    std::string joined;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      if (i) joined += ',';
      joined += table.header[i];
    }
    if (joined != kSweepCsvHeader) throw ParseError(path + ": unexpected sweep header");
  }
  std::vector<SweepRow> rows;
  rows.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    const std::string where = path + ": row " + std::to_string(table.line[r]);
    if (cells.size() != 15) throw ParseError(where + ": expected 15 columns");
    SweepRow row;
    row.kernel = cells[0];
    row.centers = cells[1];
    row.alpha = io::parse_double(cells[2], where);
    row.seed_data = static_cast<std::uint64_t>(std::stoull(cells[3]));
    row.seed_centers = static_cast<std::uint64_t>(std::stoull(cells[4]));
    row.mean_err_original = io::parse_double(cells[5], where);
    row.mean_err_proposed = io::parse_double(cells[6], where);
    row.ratio = io::parse_double(cells[7], where);
    row.max_err_original = io::parse_double(cells[8], where);
    row.max_err_proposed = io::parse_double(cells[9], where);
    row.cond_original = io::parse_double(cells[10], where);
    row.cond_proposed = io::parse_double(cells[11], where);
    row.ridge_original = io::parse_double(cells[12], where);
    row.ridge_proposed = io::parse_double(cells[13], where);
    row.status = cells[14];
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_error_grid(const Model<double>& model, const Field<double>& truth, Index nx, Index ny,
                      const std::string& path) {
  const PointSet<double> grid = regular_grid(nx, ny, truth.domain);
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << "x,y,true,approx,abs_error\n";
  for (Index i = 0; i < grid.size(); ++i) {
    const double exact = truth.value(grid.x(i), grid.y(i));
    const double approx = evaluate(model, grid.x(i), grid.y(i));
    out << io::format_double(grid.x(i)) << ',' << io::format_double(grid.y(i)) << ','
        << io::format_double(exact) << ',' << io::format_double(approx) << ','
        << io::format_double(std::abs(approx - exact)) << '\n';
  }
}

namespace {

json generator_to_json(const GeneratorSpec& g) {
  return {{"kind", g.kind},   {"n", g.count},       {"nx", g.nx},        {"ny", g.ny},
          {"start_index", g.start_index}, {"seed", g.seed}, {"jitter", g.jitter}};
}

GeneratorSpec generator_from_json(const json& j, const GeneratorSpec& defaults) {
  GeneratorSpec g = defaults;
  g.kind = j.value("kind", g.kind);
  g.count = j.value("n", g.count);
  g.nx = j.value("nx", g.nx);
  g.ny = j.value("ny", g.ny);
  g.start_index = j.value("start_index", g.start_index);
  g.seed = j.value("seed", g.seed);
  g.jitter = j.value("jitter", g.jitter);
  return g;
}

json config_to_json_obj(const ExperimentConfig& c) {
  json j;
  j["field"] = c.field;
  if (!c.data_path.empty()) j["data_path"] = c.data_path;
  j["data"] = generator_to_json(c.data);
  j["centers"] = generator_to_json(c.centers);
  if (!c.center_kinds.empty()) j["center_kinds"] = c.center_kinds;
  json kernels = json::array();
  for (KernelKind k : c.kernels) kernels.push_back(to_string(k));
  j["kernels"] = std::move(kernels);
  j["alphas"] = c.alphas;
  j["methods"] = {to_string(c.methods[0]), to_string(c.methods[1])};
  j["eval"] = {{"set", c.eval.kind == EvalSetKind::Grid ? "grid" : "training"},
               {"nx", c.eval.nx},
               {"ny", c.eval.ny}};
  if (c.domain) {
    j["domain"] = {c.domain->x_min, c.domain->x_max, c.domain->y_min, c.domain->y_max};
  }
  j["fit"] = {{"solver", to_string(c.fit.solver_path)},
              {"tolerance", c.fit.tolerance},
              {"ridge_floor", c.fit.ridge_floor},
              {"iterative_refinement", c.fit.iterative_refinement}};
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) {
  return config_to_json_obj(config).dump(2);
}

ExperimentConfig config_from_json_text(const std::string& text, const std::string& context) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(context + ": invalid JSON: " + e.what());
  }
  try {
    ExperimentConfig c;
    c.field = j.value("field", c.field);
    c.data_path = j.value("data_path", c.data_path);
    if (j.contains("data")) c.data = generator_from_json(j.at("data"), c.data);
    if (j.contains("centers")) c.centers = generator_from_json(j.at("centers"), c.centers);
    c.center_kinds = j.value("center_kinds", c.center_kinds);

    c.kernels.clear();
    if (j.contains("kernel")) {
      c.kernels.push_back(parse_kernel_kind(j.at("kernel").get<std::string>()));
    } else if (j.contains("kernels")) {
      for (const auto& k : j.at("kernels")) c.kernels.push_back(parse_kernel_kind(k.get<std::string>()));
    } else {
      c.kernels.push_back(KernelKind::Gauss);
    }

    if (j.contains("alpha")) {
      c.alphas = {j.at("alpha").get<double>()};
    } else if (j.contains("alphas")) {
      c.alphas = j.at("alphas").get<std::vector<double>>();
    } else if (j.contains("alpha_range")) {
      const json& r = j.at("alpha_range");
      c.alphas = log_spaced(r.at("min").get<double>(), r.at("max").get<double>(),
                            r.value("count", Index(20)));
    }

    if (j.contains("methods")) {
      const auto m = j.at("methods").get<std::vector<std::string>>();
      if (m.size() != 2) throw ParseError(context + ": 'methods' must list exactly two entries");
      c.methods = {parse_method(m[0]), parse_method(m[1])};
    }
    if (j.contains("eval")) {
      const json& e = j.at("eval");
      const std::string set = e.value("set", "grid");
      if (set == "training") {
        c.eval.kind = EvalSetKind::TrainingPoints;
      } else if (set == "grid") {
        c.eval.kind = EvalSetKind::Grid;
      } else {
        throw ParseError(context + ": eval.set must be 'grid' or 'training'");
      }
      c.eval.nx = e.value("nx", c.eval.nx);
      c.eval.ny = e.value("ny", c.eval.ny);
    }
    if (j.contains("domain")) {
      const auto d = j.at("domain").get<std::vector<double>>();
      if (d.size() != 4) throw ParseError(context + ": 'domain' must be [xmin,xmax,ymin,ymax]");
      c.domain = Domain2<double>(d[0], d[1], d[2], d[3]);
    }
    if (j.contains("fit")) {
      const json& f = j.at("fit");
      c.fit.solver_path = parse_solver_path(f.value("solver", std::string(to_string(c.fit.solver_path))));
      c.fit.tolerance = f.value("tolerance", c.fit.tolerance);
      c.fit.ridge_floor = f.value("ridge_floor", c.fit.ridge_floor);
      c.fit.iterative_refinement = f.value("iterative_refinement", c.fit.iterative_refinement);
    }
    return c;
  } catch (const json::exception& e) {
    throw ParseError(context + ": malformed config: " + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json_text(text, path);
}

void write_manifest(const ExperimentConfig& config,
                    const std::vector<std::pair<std::string, std::string>>& outputs,
                    const std::string& path) {
  json j;
  j["tool"] = "rbfbench";
  j["version"] = kVersion;
  j["config"] = config_to_json_obj(config);
  json resolved = json::object();
  for (KernelKind k : config.kernels) {
    resolved[to_string(k)] = config.alphas.empty() ? default_alpha_sweep(k) : config.alphas;
  }
  j["resolved_alphas"] = std::move(resolved);
  json outs = json::object();
  for (const auto& [name, p] : outputs) outs[name] = p;
  j["outputs"] = std::move(outs);
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

}  // namespace rbf

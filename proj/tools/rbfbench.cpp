// Command-line driver: point generation, fitting, evaluation and the
// original-vs-proposed comparison benchmarks, all emitting CSV/JSON.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rbf/experiment.hpp"
#include "rbf/io.hpp"
#include "rbf/version.hpp"

namespace {

using rbf::Domain2;
using rbf::ExperimentConfig;
using rbf::GeneratorSpec;
using rbf::Index;
using rbf::KernelSpec;
using rbf::Model;
using rbf::PointSet;
using rbf::ScatteredData;

Domain2<double> parse_domain(const std::string& text) {
  double v[4];
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) != 4) {
    throw std::invalid_argument("--domain expects xmin,xmax,ymin,ymax");
  }
  return Domain2<double>(v[0], v[1], v[2], v[3]);
}

std::pair<Index, Index> parse_grid_dims(const std::string& text) {
  long nx = 0, ny = 0;
  if (std::sscanf(text.c_str(), "%ldx%ld", &nx, &ny) != 2 || nx < 2 || ny < 2) {
    throw std::invalid_argument("--eval-grid expects NXxNY with both >= 2");
  }
  return {static_cast<Index>(nx), static_cast<Index>(ny)};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

// Flags shared by the experiment subcommands (compare, sweep).
struct ExperimentFlags {
  std::string config_path;
  std::string field = "sinc2d";
  std::string data_csv;
  std::string data_dist = "halton";
  Index data_n = 1089;
  Index data_nx = 0, data_ny = 0;
  std::uint64_t data_seed = 1, data_start = 1;
  double data_jitter = 0.5;
  std::string centers = "halton";
  Index m = 81;
  Index m_x = 0, m_y = 0;
  std::uint64_t seed = 1, start_index = 1;
  double jitter = 0.5;
  std::string kernel = "gauss";
  std::vector<double> alphas;
  std::string alpha_range;
  std::string methods = "original,proposed";
  std::string eval_at = "grid";
  std::string eval_grid;
  std::string domain;
  std::string solver = "normal";
  double tolerance = 1e-8;
  double ridge_floor = 0.0;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f, bool sweep) {
  cmd->add_option("--config", f.config_path,
                  "JSON config file mirroring the experiment fields (replaces the flags below)");
  cmd->add_option("--field", f.field, "ground-truth field: sinc2d or franke");
  cmd->add_option("--data", f.data_csv, "external x,y,h CSV instead of generated data");
  cmd->add_option("--data-dist", f.data_dist, "data distribution: halton, epsilon or grid");
  cmd->add_option("--data-n", f.data_n, "number of data points");
  cmd->add_option("--data-n-x", f.data_nx, "data grid columns (grid/epsilon)");
  cmd->add_option("--data-n-y", f.data_ny, "data grid rows (grid/epsilon)");
  cmd->add_option("--data-seed", f.data_seed, "data epsilon-distribution seed");
  cmd->add_option("--data-jitter", f.data_jitter, "data epsilon jitter fraction in [0,1]");
  cmd->add_option("--data-start-index", f.data_start, "data Halton start index (>= 1)");
  cmd->add_option("--centers", f.centers,
                  sweep ? "center distributions, comma list of halton|epsilon|grid"
                        : "center distribution: halton, epsilon or grid");
  cmd->add_option("--m", f.m, "number of centers (grids take --m-x/--m-y or a square count)");
  cmd->add_option("--m-x", f.m_x, "center grid columns");
  cmd->add_option("--m-y", f.m_y, "center grid rows");
  cmd->add_option("--seed", f.seed, "center epsilon-distribution seed");
  cmd->add_option("--jitter", f.jitter, "center epsilon jitter fraction in [0,1]");
  cmd->add_option("--start-index", f.start_index, "center Halton start index (>= 1)");
  cmd->add_option("--kernel", f.kernel,
                  sweep ? "kernel families, comma list of gauss|iq|tps" : "kernel: gauss, iq or tps");
  if (sweep) {
    cmd->add_option("--alphas", f.alphas, "explicit shape parameters (>= 2 values)");
    cmd->add_option("--alpha-range", f.alpha_range,
                    "log-spaced sweep MIN:MAX:COUNT (default: per-kernel range)");
  } else {
    f.alphas.assign(1, 0.0);
    cmd->add_option("--alpha", f.alphas[0], "shape parameter (required unless --config is given)");
  }
  cmd->add_option("--methods", f.methods, "two comma-separated methods (numerator,denominator)");
  cmd->add_option("--eval-at", f.eval_at, "error evaluation set: grid or training");
  cmd->add_option("--eval-grid", f.eval_grid, "evaluation grid NXxNY (default per field)");
  cmd->add_option("--domain", f.domain, "generation domain xmin,xmax,ymin,ymax (default per field)");
  cmd->add_option("--solver", f.solver, "solver path: normal or qr");
  cmd->add_option("--tol", f.tolerance, "relative normal-equation residual bound");
  cmd->add_option("--ridge-floor", f.ridge_floor, "ridge applied before the first solve attempt");
}

ExperimentConfig config_from_flags(const ExperimentFlags& f, bool sweep) {
  if (!f.config_path.empty()) return rbf::load_config(f.config_path);
  if (!sweep && (f.alphas.empty() || f.alphas[0] <= 0.0)) {
    throw std::invalid_argument("compare: --alpha is required (or pass --config)");
  }
  ExperimentConfig c;
  c.field = f.field;
  c.data_path = f.data_csv;
  c.data = {f.data_dist, f.data_n, f.data_nx, f.data_ny, f.data_start, f.data_seed, f.data_jitter};
  const auto center_kinds = split_list(f.centers);
  c.centers = {center_kinds.front(), f.m, f.m_x, f.m_y, f.start_index, f.seed, f.jitter};
  if (sweep) c.center_kinds = center_kinds;

  c.kernels.clear();
  for (const auto& name : split_list(f.kernel)) c.kernels.push_back(rbf::parse_kernel_kind(name));

  if (!f.alpha_range.empty()) {
    double lo = 0, hi = 0;
    long count = 20;
    if (std::sscanf(f.alpha_range.c_str(), "%lf:%lf:%ld", &lo, &hi, &count) < 2) {
      throw std::invalid_argument("--alpha-range expects MIN:MAX[:COUNT]");
    }
    c.alphas = rbf::log_spaced(lo, hi, static_cast<Index>(count));
  } else {
    c.alphas = f.alphas;
  }

  const auto methods = split_list(f.methods);
  if (methods.size() != 2) throw std::invalid_argument("--methods expects exactly two entries");
  c.methods = {rbf::parse_method(methods[0]), rbf::parse_method(methods[1])};

  if (f.eval_at == "training") {
    c.eval.kind = rbf::EvalSetKind::TrainingPoints;
  } else if (f.eval_at == "grid") {
    c.eval.kind = rbf::EvalSetKind::Grid;
  } else {
    throw std::invalid_argument("--eval-at expects grid or training");
  }
  if (!f.eval_grid.empty()) {
    std::tie(c.eval.nx, c.eval.ny) = parse_grid_dims(f.eval_grid);
  }
  if (!f.domain.empty()) c.domain = parse_domain(f.domain);
  c.fit.solver_path = rbf::parse_solver_path(f.solver);
  c.fit.tolerance = f.tolerance;
  c.fit.ridge_floor = f.ridge_floor;
  return c;
}

void print_report(const char* label, const rbf::ErrorReport<double>& r) {
  std::cout << label << ": max " << rbf::io::format_double(r.max_abs) << "  mean "
            << rbf::io::format_double(r.mean_abs) << "  rms " << rbf::io::format_double(r.rms)
            << "  (" << r.count << " points)\n";
}

int run(int argc, char** argv) {
  CLI::App app{"RBF least-squares approximation benchmarks"};
  app.set_version_flag("--version", rbf::kVersion);
  app.require_subcommand(1);

  // ---- gen-data ----------------------------------------------------------
  auto* gen = app.add_subcommand("gen-data", "generate a point set, optionally sampled from a field");
  struct {
    std::string field, dist = "halton", domain, out;
    Index n = 0, nx = 0, ny = 0;
    std::uint64_t seed = 1, start_index = 1;
    double jitter = 0.5;
  } g;
  gen->add_option("--field", g.field, "sample sinc2d or franke to write x,y,h (omit for x,y only)");
  gen->add_option("--dist", g.dist, "halton, epsilon or grid");
  gen->add_option("--n", g.n, "point count");
  gen->add_option("--n-x", g.nx, "grid columns");
  gen->add_option("--n-y", g.ny, "grid rows");
  gen->add_option("--seed", g.seed, "epsilon seed");
  gen->add_option("--jitter", g.jitter, "epsilon jitter fraction");
  gen->add_option("--start-index", g.start_index, "Halton start index");
  gen->add_option("--domain", g.domain, "xmin,xmax,ymin,ymax (default: the field's domain)");
  gen->add_option("--out", g.out, "output CSV path")->required();

  // ---- fit ---------------------------------------------------------------
  auto* fit_cmd = app.add_subcommand("fit", "fit one model to scattered data");
  struct {
    std::string data, centers = "halton", domain, kernel = "gauss", method = "proposed",
                solver = "normal", out, dump_system;
    Index m = 81, m_x = 0, m_y = 0;
    std::uint64_t seed = 1, start_index = 1;
    double jitter = 0.5, alpha = 0, tolerance = 1e-8, ridge_floor = 0;
    bool refine = false;
  } ft;
  fit_cmd->add_option("--data", ft.data, "x,y,h CSV")->required();
  fit_cmd->add_option("--centers", ft.centers, "center distribution: halton, epsilon or grid");
  fit_cmd->add_option("--m", ft.m, "number of centers");
  fit_cmd->add_option("--m-x", ft.m_x, "center grid columns");
  fit_cmd->add_option("--m-y", ft.m_y, "center grid rows");
  fit_cmd->add_option("--seed", ft.seed, "center epsilon seed");
  fit_cmd->add_option("--jitter", ft.jitter, "center epsilon jitter fraction");
  fit_cmd->add_option("--start-index", ft.start_index, "center Halton start index");
  fit_cmd->add_option("--domain", ft.domain,
                      "center domain xmin,xmax,ymin,ymax (default: data bounding box)");
  fit_cmd->add_option("--kernel", ft.kernel, "gauss, iq or tps");
  fit_cmd->add_option("--alpha", ft.alpha, "shape parameter")->required();
  fit_cmd->add_option("--method", ft.method, "original or proposed");
  fit_cmd->add_option("--solver", ft.solver, "normal or qr");
  fit_cmd->add_option("--tol", ft.tolerance, "relative normal-equation residual bound");
  fit_cmd->add_option("--ridge-floor", ft.ridge_floor, "ridge applied before the first attempt");
  fit_cmd->add_flag("--refine", ft.refine, "one iterative-refinement sweep on the normal path");
  fit_cmd->add_option("--dump-system", ft.dump_system, "write B and f as plain text");
  fit_cmd->add_option("--out", ft.out, "model JSON path")->required();

  // ---- eval --------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a saved model");
  struct {
    std::string model, at, data, out;
  } ev;
  eval_cmd->add_option("--model", ev.model, "model JSON path")->required();
  eval_cmd->add_option("--at", ev.at, "single point x,y; prints the value");
  eval_cmd->add_option("--data", ev.data, "points CSV (x,y or x,y,h)");
  eval_cmd->add_option("--out", ev.out, "output CSV (x,y,value) for --data");

  // ---- compare -----------------------------------------------------------
  auto* compare_cmd = app.add_subcommand("compare", "fit both methods once and report the error ratio");
  ExperimentFlags cf;
  add_experiment_flags(compare_cmd, cf, /*sweep=*/false);
  std::string compare_out;
  compare_cmd->add_option("--out", compare_out, "JSON report path");

  // ---- sweep -------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "shape-parameter sweep over kernels and distributions");
  ExperimentFlags sf;
  add_experiment_flags(sweep_cmd, sf, /*sweep=*/true);
  std::string sweep_out, manifest_out;
  sweep_cmd->add_option("--out", sweep_out, "sweep CSV path")->required();
  sweep_cmd->add_option("--manifest", manifest_out, "run manifest JSON path");

  // ---- error-grid --------------------------------------------------------
  auto* grid_cmd = app.add_subcommand("error-grid", "dense error surface of a saved model");
  struct {
    std::string model, field = "sinc2d", out;
    Index nx = 0, ny = 0;
  } eg;
  grid_cmd->add_option("--model", eg.model, "model JSON path")->required();
  grid_cmd->add_option("--field", eg.field, "sinc2d or franke");
  grid_cmd->add_option("--nx", eg.nx, "grid columns (default per field)");
  grid_cmd->add_option("--ny", eg.ny, "grid rows (default per field)");
  grid_cmd->add_option("--out", eg.out, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    std::optional<Domain2<double>> domain;
    if (!g.domain.empty()) domain = parse_domain(g.domain);
    std::optional<rbf::Field<double>> field;
    if (!g.field.empty()) field = rbf::make_field<double>(g.field);
    if (!domain && field) domain = field->domain;
    if (!domain) throw std::invalid_argument("gen-data: pass --domain or --field");
    const GeneratorSpec spec{g.dist, g.n, g.nx, g.ny, g.start_index, g.seed, g.jitter};
    const PointSet<double> points = rbf::generate_points(spec, *domain);
    if (field) {
      rbf::io::save_scattered(rbf::sample_field(*field, points), g.out);
    } else {
      rbf::io::save_points(points, g.out);
    }
    std::cout << "wrote " << points.size() << " points to " << g.out << "\n";
    return 0;
  }

  if (fit_cmd->parsed()) {
    const ScatteredData<double> data = rbf::io::load_scattered(ft.data);
    if (data.size() == 0) throw std::invalid_argument(ft.data + ": no data points");
    Domain2<double> domain =
        ft.domain.empty()
            ? Domain2<double>(data.sites.points.col(0).minCoeff(), data.sites.points.col(0).maxCoeff(),
                              data.sites.points.col(1).minCoeff(), data.sites.points.col(1).maxCoeff())
            : parse_domain(ft.domain);
    const GeneratorSpec spec{ft.centers, ft.m, ft.m_x, ft.m_y, ft.start_index, ft.seed, ft.jitter};
    const PointSet<double> centers = rbf::generate_points(spec, domain);
    const KernelSpec<double> kernel(rbf::parse_kernel_kind(ft.kernel), ft.alpha);
    const rbf::Method method = rbf::parse_method(ft.method);

    rbf::FitOptions<double> options;
    options.solver_path = rbf::parse_solver_path(ft.solver);
    options.tolerance = ft.tolerance;
    options.ridge_floor = ft.ridge_floor;
    options.iterative_refinement = ft.refine;

    if (!ft.dump_system.empty()) {
      const auto d = rbf::build_design(data, centers, kernel);
      rbf::io::dump_system(method == rbf::Method::Proposed ? rbf::assemble_proposed(d)
                                                           : rbf::assemble_original(d),
                           ft.dump_system);
    }
    const Model<double> model = rbf::fit(data, centers, kernel, method, options);
    rbf::io::save_model(model, ft.out);
    std::cout << "fit " << rbf::to_string(method) << " " << rbf::to_string(kernel.kind)
              << " alpha=" << rbf::io::format_double(kernel.alpha)
              << ": residual=" << rbf::io::format_double(model.diagnostics.residual_norm)
              << " cond~" << rbf::io::format_double(model.diagnostics.condition_estimate)
              << " ridge=" << rbf::io::format_double(model.diagnostics.ridge_used) << "\n";
    if (!model.diagnostics.warning.empty()) {
      std::cout << "warning: " << model.diagnostics.warning << "\n";
    }
    return 0;
  }

  if (eval_cmd->parsed()) {
    const Model<double> model = rbf::io::load_model(ev.model);
    if (!ev.at.empty()) {
      double x = 0, y = 0;
      if (std::sscanf(ev.at.c_str(), "%lf,%lf", &x, &y) != 2) {
        throw std::invalid_argument("--at expects x,y");
      }
      std::cout << rbf::io::format_double(rbf::evaluate(model, x, y)) << "\n";
    }
    if (!ev.data.empty()) {
      if (ev.out.empty()) throw std::invalid_argument("eval --data needs --out");
      const PointSet<double> points = rbf::io::load_points(ev.data);
      std::ofstream out(ev.out);
      if (!out) throw rbf::ParseError("cannot open '" + ev.out + "' for writing");
      out << "x,y,value\n";
      for (Index i = 0; i < points.size(); ++i) {
        out << rbf::io::format_double(points.x(i)) << ',' << rbf::io::format_double(points.y(i))
            << ',' << rbf::io::format_double(rbf::evaluate(model, points.x(i), points.y(i)))
            << '\n';
      }
      std::cout << "wrote " << points.size() << " values to " << ev.out << "\n";
    }
    if (ev.at.empty() && ev.data.empty()) {
      throw std::invalid_argument("eval: pass --at and/or --data");
    }
    return 0;
  }

  if (compare_cmd->parsed()) {
    const ExperimentConfig config = config_from_flags(cf, /*sweep=*/false);
    const rbf::CompareOutcome outcome = rbf::run_compare(config);
    print_report(rbf::to_string(config.methods[0]), outcome.report_original);
    print_report(rbf::to_string(config.methods[1]), outcome.report_proposed);
    std::cout << "mean-error ratio: "
              << (outcome.ratio.infinite ? "inf (denominator is zero)"
                                         : rbf::io::format_double(outcome.ratio.value))
              << "\n";
    if (!compare_out.empty()) {
      std::ofstream out(compare_out);
      if (!out) throw rbf::ParseError("cannot open '" + compare_out + "' for writing");
      auto report_json = [](const rbf::ErrorReport<double>& r) {
        return std::string("{\"max_abs\": ") + rbf::io::format_double(r.max_abs) +
               ", \"mean_abs\": " + rbf::io::format_double(r.mean_abs) +
               ", \"rms\": " + rbf::io::format_double(r.rms) +
               ", \"count\": " + std::to_string(r.count) + "}";
      };
      out << "{\n  \"original\": " << report_json(outcome.report_original)
          << ",\n  \"proposed\": " << report_json(outcome.report_proposed)
          << ",\n  \"ratio\": " << (outcome.ratio.infinite ? "null" : rbf::io::format_double(outcome.ratio.value))
          << ",\n  \"ratio_infinite\": " << (outcome.ratio.infinite ? "true" : "false") << "\n}\n";
    }
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const ExperimentConfig config = config_from_flags(sf, /*sweep=*/true);
    const auto rows = rbf::run_sweep(config);
    rbf::write_sweep_csv(rows, sweep_out);
    std::size_t failures = 0;
    for (const auto& row : rows) {
      if (row.status != "ok") ++failures;
    }
    std::cout << "wrote " << rows.size() << " rows to " << sweep_out;
    if (failures > 0) std::cout << " (" << failures << " error rows)";
    std::cout << "\n";
    if (!manifest_out.empty()) {
      rbf::write_manifest(config, {{"sweep_csv", sweep_out}}, manifest_out);
      std::cout << "wrote manifest to " << manifest_out << "\n";
    }
    return 0;
  }

  if (grid_cmd->parsed()) {
    const Model<double> model = rbf::io::load_model(eg.model);
    const rbf::Field<double> field = rbf::make_field<double>(eg.field);
    const rbf::EvalSpec def = rbf::default_eval(eg.field);
    const Index nx = eg.nx >= 2 ? eg.nx : def.nx;
    const Index ny = eg.ny >= 2 ? eg.ny : def.ny;
    rbf::write_error_grid(model, field, nx, ny, eg.out);
    std::cout << "wrote " << nx * ny << " rows to " << eg.out << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rbf::SingularSystemError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

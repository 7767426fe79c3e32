#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rbf/bench.hpp"
#include "rbf/fields.hpp"
#include "rbf/fit.hpp"
#include "rbf/pointgen.hpp"

namespace rbf {

// One point-distribution request: halton (count, start_index), grid
// (nx by ny, or a square factorization of count), epsilon (grid plus
// jitter and seed).
struct GeneratorSpec {
  std::string kind = "halton";
  Index count = 0;
  Index nx = 0, ny = 0;
  std::uint64_t start_index = 1;
  std::uint64_t seed = 1;
  double jitter = 0.5;
};

struct EvalSpec {
  EvalSetKind kind = EvalSetKind::Grid;
  Index nx = 0, ny = 0;  // 0 means the per-field default
};

struct ExperimentConfig {
  std::string field = "sinc2d";
  std::string data_path;  // external x,y,h CSV; overrides the data generator
  GeneratorSpec data{.kind = "halton", .count = 1089};
  GeneratorSpec centers{.kind = "halton", .count = 81};
  std::vector<std::string> center_kinds;  // sweep only; empty = {centers.kind}
  std::vector<KernelKind> kernels{KernelKind::Gauss};
  std::vector<double> alphas;  // empty = per-kernel default sweep
  std::array<Method, 2> methods{Method::Original, Method::Proposed};
  EvalSpec eval;
  std::optional<Domain2<double>> domain;  // default: the field's domain
  FitOptions<double> fit;
};

struct CompareOutcome {
  Model<double> original;
  Model<double> proposed;
  ErrorReport<double> report_original;
  ErrorReport<double> report_proposed;
  MeanErrorRatio<double> ratio;
};

struct SweepRow {
  std::string kernel;
  std::string centers;
  double alpha = 0;
  std::uint64_t seed_data = 0;
  std::uint64_t seed_centers = 0;
  double mean_err_original = 0;
  double mean_err_proposed = 0;
  double ratio = 0;
  double max_err_original = 0;
  double max_err_proposed = 0;
  double cond_original = 0;
  double cond_proposed = 0;
  double ridge_original = 0;
  double ridge_proposed = 0;
  std::string status = "ok";
};

inline constexpr const char* kSweepCsvHeader =
    "kernel,centers,alpha,seed_data,seed_centers,mean_err_original,mean_err_proposed,ratio,"
    "max_err_original,max_err_proposed,cond_original,cond_proposed,ridge_original,"
    "ridge_proposed,status";

std::vector<double> log_spaced(double lo, double hi, Index count);

// 20 log-spaced alphas bracketing the reference value of each kernel family.
std::vector<double> default_alpha_sweep(KernelKind kind);

Domain2<double> default_domain(const std::string& field_name);
EvalSpec default_eval(const std::string& field_name);

PointSet<double> generate_points(const GeneratorSpec& spec, const Domain2<double>& domain);

// Resolved inputs shared by every fit of a run: one data set, one domain,
// one eval spec.
struct ResolvedInputs {
  ScatteredData<double> data;
  Domain2<double> domain;
  EvalSpec eval;
  std::optional<Field<double>> field;  // absent when truth is training data only
};

ResolvedInputs resolve_inputs(const ExperimentConfig& config);

// Fits methods[0] and methods[1] on identical data and centers and reports
// the mean-error ratio methods[0] / methods[1].
CompareOutcome run_compare(const ExperimentConfig& config);

// One row per (kernel, center distribution, alpha), ordered exactly that
// way. A failed fit yields an error row; the sweep always completes.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> parse_sweep_csv(const std::string& path);

// x,y,true,approx,abs_error over an nx-by-ny grid of the field's domain.
void write_error_grid(const Model<double>& model, const Field<double>& truth, Index nx, Index ny,
                      const std::string& path);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json_text(const std::string& text, const std::string& context);
ExperimentConfig load_config(const std::string& path);

// Self-describing run record: config echo, seeds and library version.
void write_manifest(const ExperimentConfig& config,
                    const std::vector<std::pair<std::string, std::string>>& outputs,
                    const std::string& path);

}  // namespace rbf

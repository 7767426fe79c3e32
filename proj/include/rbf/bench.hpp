#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rbf/fields.hpp"
#include "rbf/fit.hpp"
#include "rbf/pointgen.hpp"
#include "rbf/types.hpp"

namespace rbf {

enum class EvalSetKind { TrainingPoints, Grid };

// Absolute-error statistics of a model against a ground truth.
template <typename Scalar>
struct ErrorReport {
  Scalar max_abs = Scalar(0);
  Scalar mean_abs = Scalar(0);
  Scalar rms = Scalar(0);
  EvalSetKind eval_set = EvalSetKind::Grid;
  Index count = 0;
};

namespace detail {
template <typename Scalar>
ErrorReport<Scalar> error_stats(const VectorX<Scalar>& approx, const VectorX<Scalar>& truth,
                                EvalSetKind eval_set) {
  if (approx.size() == 0) throw std::invalid_argument("error_report: empty evaluation set");
  const VectorX<Scalar> abs_err = (approx - truth).cwiseAbs();
  ErrorReport<Scalar> out;
  out.max_abs = abs_err.maxCoeff();
  out.mean_abs = abs_err.mean();
  out.rms = std::sqrt(abs_err.squaredNorm() / static_cast<Scalar>(abs_err.size()));
  out.eval_set = eval_set;
  out.count = abs_err.size();
  return out;
}
}  // namespace detail

// Errors over an nx-by-ny evaluation grid spanning the field's domain.
template <typename Scalar>
ErrorReport<Scalar> error_report(const Model<Scalar>& model, const Field<Scalar>& truth,
                                 Index nx, Index ny) {
  const PointSet<Scalar> grid = regular_grid(nx, ny, truth.domain);
  VectorX<Scalar> exact(grid.size());
  for (Index i = 0; i < grid.size(); ++i) exact(i) = truth.value(grid.x(i), grid.y(i));
  return detail::error_stats(evaluate_at(model, grid.points), exact, EvalSetKind::Grid);
}

// Errors at the training sites against the stored values.
template <typename Scalar>
ErrorReport<Scalar> error_report(const Model<Scalar>& model, const ScatteredData<Scalar>& truth) {
  return detail::error_stats(evaluate_at(model, truth.sites.points), truth.values,
                             EvalSetKind::TrainingPoints);
}

template <typename Scalar>
struct MeanErrorRatio {
  Scalar value;
  bool infinite;  // proposed mean error was exactly zero
};

// ratio = mean error (original) / mean error (proposed). A zero denominator
// yields the +infinity sentinel with the flag set instead of an exception.
template <typename Scalar>
MeanErrorRatio<Scalar> mean_error_ratio(Scalar mean_original, Scalar mean_proposed) {
  if (mean_proposed == Scalar(0)) {
    return {std::numeric_limits<Scalar>::infinity(), true};
  }
  return {mean_original / mean_proposed, false};
}

}  // namespace rbf

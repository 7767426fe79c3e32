#pragma once

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbf/assembly.hpp"
#include "rbf/types.hpp"

namespace rbf {

enum class SolverPath { NormalEq, StackedQR };

inline const char* to_string(SolverPath p) {
  return p == SolverPath::NormalEq ? "normal" : "qr";
}

inline SolverPath parse_solver_path(std::string name) {
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "normal") return SolverPath::NormalEq;
  if (name == "qr") return SolverPath::StackedQR;
  throw std::invalid_argument("unknown solver '" + name + "' (expected normal or qr)");
}

template <typename Scalar>
struct FitOptions {
  SolverPath solver_path = SolverPath::NormalEq;
  // Relative normal-equation residual bound |B l - f| / max(|f|, 1).
  Scalar tolerance = Scalar(1e-8);
  // Ridge applied before the first attempt; reruns of ill-conditioned fits
  // set this to force a better-conditioned system on both solver paths.
  Scalar ridge_floor = Scalar(0);
  // One extra refinement sweep on the normal path.
  bool iterative_refinement = false;
};

template <typename Scalar>
struct FitDiagnostics {
  Scalar residual_norm = Scalar(0);      // |A c + P k - h|
  Scalar normal_residual = Scalar(0);    // relative, for the system as solved
  Scalar condition_estimate = Scalar(0); // factorization diagonal ratio
  Scalar ridge_used = Scalar(0);
  SolverPath solver_path = SolverPath::NormalEq;
  std::string warning;
};

// Fitted approximant f(x) = sum_j c_j phi(|x - center_j|) + a.x + a0.
template <typename Scalar>
struct Model {
  KernelSpec<Scalar> kernel;
  PointSet<Scalar> centers;
  VectorX<Scalar> weights;  // c, one per center
  Vector2<Scalar> a;
  Scalar a0;
  Method method;
  FitDiagnostics<Scalar> diagnostics;
};

namespace detail {

template <typename Scalar>
Scalar finite_or_max(Scalar v) {
  return std::isfinite(static_cast<double>(v)) ? v : std::numeric_limits<Scalar>::max();
}

// Ridge ladder: the floor first, then six power-of-ten escalations above
// 1e-14 * mean(|diag B|).
template <typename Scalar>
std::vector<Scalar> ridge_ladder(Scalar mean_diag, Scalar floor) {
  Scalar base = Scalar(1e-14) * mean_diag;
  if (!(base > Scalar(0))) base = Scalar(1e-14);
  if (floor > base) base = floor * Scalar(10);
  std::vector<Scalar> taus;
  taus.push_back(floor);
  for (int j = 0; j <= 6; ++j) {
    taus.push_back(base * std::pow(Scalar(10), Scalar(j)));
  }
  return taus;
}

}  // namespace detail

template <typename Scalar>
struct SolveResult {
  VectorX<Scalar> lambda;
  FitDiagnostics<Scalar> diagnostics;
};

// LDLT solve of B lambda = f with ridge escalation. An attempt counts as
// failed when the factorization reports trouble, the pivot spread shows the
// matrix rank-deficient at working precision, or the relative residual of
// the attempted (ridged) system misses the tolerance.
template <typename Scalar>
SolveResult<Scalar> solve_normal(const NormalSystem<Scalar>& system,
                                 const FitOptions<Scalar>& options = {}) {
  const MatrixX<Scalar>& b = system.B;
  const VectorX<Scalar>& f = system.f;
  if (b.rows() != b.cols() || f.size() != b.rows()) {
    throw std::invalid_argument("solve_normal: dimension mismatch");
  }
  if (!b.allFinite() || !f.allFinite()) {
    throw std::invalid_argument("solve_normal: non-finite input");
  }
  if (b != b.transpose()) {
    throw std::invalid_argument("solve_normal: B must be symmetric");
  }
  const Scalar f_scale = std::max(f.norm(), Scalar(1));
  const Scalar mean_diag = b.diagonal().cwiseAbs().mean();

  Scalar last_cond = std::numeric_limits<Scalar>::infinity();
  Eigen::LDLT<MatrixX<Scalar>> ldlt;
  for (Scalar tau : detail::ridge_ladder(mean_diag, options.ridge_floor)) {
    MatrixX<Scalar> bt = b;
    bt.diagonal().array() += tau;
    ldlt.compute(bt);
    if (ldlt.info() != Eigen::Success) continue;

    const VectorX<Scalar> d = ldlt.vectorD();
    const Scalar d_min_signed = d.minCoeff();
    last_cond = detail::finite_or_max(d_min_signed > Scalar(0)
                                          ? d.cwiseAbs().maxCoeff() / d.cwiseAbs().minCoeff()
                                          : std::numeric_limits<Scalar>::infinity());
    // A nonpositive pivot means semidefinite (or worse) at this precision.
    // Small positive pivots are left to the residual check: B often carries
    // wildly different block scales, which a pivot-ratio test misreads.
    if (!(d_min_signed > Scalar(0))) continue;

    VectorX<Scalar> lambda = ldlt.solve(f);
    if (!lambda.allFinite()) continue;
    if (options.iterative_refinement) {
      lambda += ldlt.solve(f - bt * lambda);
    }
    const Scalar rel = (bt * lambda - f).norm() / f_scale;
    if (rel <= options.tolerance) {
      SolveResult<Scalar> out;
      out.lambda = std::move(lambda);
      out.diagnostics.normal_residual = rel;
      out.diagnostics.condition_estimate = last_cond;
      out.diagnostics.ridge_used = tau;
      out.diagnostics.solver_path = SolverPath::NormalEq;
      return out;
    }
  }
  throw SingularSystemError(
      "solve_normal: system not solvable to tolerance at the ridge cap (condition estimate " +
          std::to_string(static_cast<double>(last_cond)) + ")",
      static_cast<double>(last_cond));
}

namespace detail {

// Least-squares solve of the rectangular system by column-pivoted QR. A
// ridge tau enters as sqrt(tau) * I rows appended below, which makes the
// minimizer identical to the tau-ridged normal solution.
template <typename Scalar>
SolveResult<Scalar> solve_stacked_qr(const DesignMatrices<Scalar>& d, Method method,
                                     const FitOptions<Scalar>& options) {
  const Index n = d.n();
  const Index m = d.m();
  const Index cols = m + 3;
  const Index constraint_rows = method == Method::Original ? 3 : 0;

  MatrixX<Scalar> g0(n + constraint_rows, cols);
  g0.topLeftCorner(n, m) = d.A;
  g0.topRightCorner(n, 3) = d.P;
  if (constraint_rows > 0) {
    g0.bottomLeftCorner(3, m) = d.Xi;
    g0.bottomRightCorner(3, 3).setZero();
  }
  VectorX<Scalar> rhs0 = VectorX<Scalar>::Zero(n + constraint_rows);
  rhs0.head(n) = d.h;

  const VectorX<Scalar> f = g0.transpose() * rhs0;
  const Scalar f_scale = std::max(f.norm(), Scalar(1));
  const Scalar mean_diag = g0.colwise().squaredNorm().mean();

  Scalar last_cond = std::numeric_limits<Scalar>::infinity();
  for (Scalar tau : ridge_ladder(mean_diag, options.ridge_floor)) {
    MatrixX<Scalar> g = g0;
    VectorX<Scalar> rhs = rhs0;
    if (tau > Scalar(0)) {
      g.conservativeResize(g0.rows() + cols, cols);
      g.bottomRows(cols) = std::sqrt(tau) * MatrixX<Scalar>::Identity(cols, cols);
      rhs.conservativeResize(rhs0.size() + cols);
      rhs.tail(cols).setZero();
    }
    Eigen::ColPivHouseholderQR<MatrixX<Scalar>> qr(g);
    const VectorX<Scalar> r_diag = qr.matrixR().diagonal().cwiseAbs();
    last_cond = finite_or_max(r_diag.minCoeff() > Scalar(0)
                                  ? r_diag.maxCoeff() / r_diag.minCoeff()
                                  : std::numeric_limits<Scalar>::infinity());
    VectorX<Scalar> lambda = qr.solve(rhs);
    if (!lambda.allFinite()) continue;
    // Normal-equation residual via G^T(G lambda - rhs); the ridge rows fold
    // in the +tau*lambda term.
    const Scalar rel = (g.transpose() * (g * lambda - rhs)).norm() / f_scale;
    if (rel <= options.tolerance) {
      SolveResult<Scalar> out;
      out.lambda = std::move(lambda);
      out.diagnostics.normal_residual = rel;
      out.diagnostics.condition_estimate = last_cond;
      out.diagnostics.ridge_used = tau;
      out.diagnostics.solver_path = SolverPath::StackedQR;
      return out;
    }
  }
  throw SingularSystemError(
      "stacked QR: system not solvable to tolerance at the ridge cap (condition estimate " +
          std::to_string(static_cast<double>(last_cond)) + ")",
      static_cast<double>(last_cond));
}

}  // namespace detail

// End-to-end fit of one model by the selected formulation and solver path.
template <typename Scalar>
Model<Scalar> fit(const ScatteredData<Scalar>& data, const PointSet<Scalar>& centers,
                  const KernelSpec<Scalar>& kernel, Method method,
                  const FitOptions<Scalar>& options = {}) {
  const DesignMatrices<Scalar> d = build_design(data, centers, kernel);

  SolveResult<Scalar> solved =
      options.solver_path == SolverPath::NormalEq
          ? solve_normal(method == Method::Proposed ? assemble_proposed(d) : assemble_original(d),
                         options)
          : detail::solve_stacked_qr(d, method, options);

  Model<Scalar> model{kernel,
                      centers,
                      solved.lambda.head(d.m()),
                      solved.lambda.template segment<2>(d.m()),
                      solved.lambda(d.m() + 2),
                      method,
                      std::move(solved.diagnostics)};
  VectorX<Scalar> k(3);
  k << model.a(0), model.a(1), model.a0;
  model.diagnostics.residual_norm = std::sqrt(residual_and_gradient(d, model.weights, k).r2);
  if (d.n() < d.m() + 3) {
    model.diagnostics.warning = "N < M + 3: fewer data points than unknowns";
  }
  return model;
}

template <typename Scalar>
Scalar evaluate(const Model<Scalar>& model, Scalar x, Scalar y) {
  if (!std::isfinite(static_cast<double>(x)) || !std::isfinite(static_cast<double>(y))) {
    throw std::domain_error("evaluate: point must be finite");
  }
  Scalar acc = Scalar(0);
  for (Index j = 0; j < model.centers.size(); ++j) {
    const Scalar dx = x - model.centers.x(j);
    const Scalar dy = y - model.centers.y(j);
    acc += model.weights(j) * eval_kernel(model.kernel, std::sqrt(dx * dx + dy * dy));
  }
  return acc + model.a(0) * x + model.a(1) * y + model.a0;
}

template <typename Scalar>
VectorX<Scalar> evaluate_at(const Model<Scalar>& model, const Points2<Scalar>& points) {
  VectorX<Scalar> out(points.rows());
  for (Index i = 0; i < points.rows(); ++i) {
    out(i) = evaluate(model, points(i, 0), points(i, 1));
  }
  return out;
}

}  // namespace rbf

#pragma once

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rbf/fields.hpp"
#include "rbf/kernels.hpp"
#include "rbf/pointgen.hpp"
#include "rbf/types.hpp"

namespace rbf {

enum class Method { Original, Proposed };

inline const char* to_string(Method m) {
  return m == Method::Original ? "original" : "proposed";
}

inline Method parse_method(std::string name) {
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "original") return Method::Original;
  if (name == "proposed") return Method::Proposed;
  throw std::invalid_argument("unknown method '" + name + "' (expected original or proposed)");
}

// The rectangular building blocks shared by both formulations:
//   A(i,j) = phi(|x_i - xi_j|)      N x M
//   P row i = (x_i, y_i, 1)         N x 3
//   Xi rows = (xi_j), (eta_j), (1)  3 x M   side-condition coefficients
template <typename Scalar>
struct DesignMatrices {
  MatrixX<Scalar> A;
  MatrixX<Scalar> P;
  MatrixX<Scalar> Xi;
  VectorX<Scalar> h;

  Index n() const { return A.rows(); }
  Index m() const { return A.cols(); }
};

// Square symmetric system B lambda = f of size (M+3), with lambda =
// (c_1..c_M, a_x, a_y, a_0). B is exactly symmetric: one triangle is
// computed and mirrored.
template <typename Scalar>
struct NormalSystem {
  MatrixX<Scalar> B;
  VectorX<Scalar> f;
  Method method;

  Index size() const { return B.rows(); }
  Index m() const { return B.rows() - 3; }
};

template <typename Scalar>
DesignMatrices<Scalar> build_design(const ScatteredData<Scalar>& data,
                                    const PointSet<Scalar>& centers,
                                    const KernelSpec<Scalar>& kernel) {
  const Index n = data.size();
  const Index m = centers.size();
  if (n < 1) throw std::invalid_argument("build_design: need at least one data point");
  if (m < 1) throw std::invalid_argument("build_design: need at least one center");
  if (data.values.size() != n) throw std::invalid_argument("build_design: values/points length mismatch");

  DesignMatrices<Scalar> d;
  d.A.resize(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      const Scalar r = (data.sites.points.row(i) - centers.points.row(j)).norm();
      const Scalar phi = eval_kernel(kernel, r);
      if (!std::isfinite(static_cast<double>(phi))) {
        throw std::range_error("build_design: non-finite kernel value at (" + std::to_string(i) +
                               ", " + std::to_string(j) + ")");
      }
      d.A(i, j) = phi;
    }
  }
  d.P.resize(n, 3);
  d.P.col(0) = data.sites.points.col(0);
  d.P.col(1) = data.sites.points.col(1);
  d.P.col(2).setOnes();
  d.Xi.resize(3, m);
  d.Xi.row(0) = centers.points.col(0).transpose();
  d.Xi.row(1) = centers.points.col(1).transpose();
  d.Xi.row(2).setOnes();
  d.h = data.values;
  return d;
}

namespace detail {
// G^T G accumulated on the upper triangle and mirrored, so the result is
// symmetric to the bit.
template <typename Scalar>
MatrixX<Scalar> gram(const MatrixX<Scalar>& g) {
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(g.cols(), g.cols());
  out.template selfadjointView<Eigen::Upper>().rankUpdate(g.transpose());
  out = out.template selfadjointView<Eigen::Upper>();
  return out;
}
}  // namespace detail

// B = [[A^T A, A^T P], [P^T A, P^T P]], f = [A^T h; P^T h].
template <typename Scalar>
NormalSystem<Scalar> assemble_proposed(const DesignMatrices<Scalar>& d) {
  MatrixX<Scalar> g(d.n(), d.m() + 3);
  g << d.A, d.P;
  NormalSystem<Scalar> sys;
  sys.B = detail::gram(g);
  sys.f = g.transpose() * d.h;
  sys.method = Method::Proposed;
  return sys;
}

// Same as the proposed system plus Xi^T Xi folded into the top-left M x M
// block; the right-hand side is unchanged. This reproduces the classical
// constrained formulation verbatim, including its unit weighting of the
// side-condition rows against the data rows.
template <typename Scalar>
NormalSystem<Scalar> assemble_original(const DesignMatrices<Scalar>& d) {
  NormalSystem<Scalar> sys = assemble_proposed(d);
  sys.B.topLeftCorner(d.m(), d.m()) += detail::gram(d.Xi);
  sys.method = Method::Original;
  return sys;
}

template <typename Scalar>
struct ResidualGradient {
  Scalar r2;                // squared data residual
  VectorX<Scalar> grad_c;   // d r2 / d c
  VectorX<Scalar> grad_k;   // d r2 / d k, k = (a_x, a_y, a_0)
};

// r2 = |A c + P k - h|^2 and its gradients 2 A^T r, 2 P^T r. Accepts any
// vector expression for the coefficients.
template <typename Scalar, typename DerivedC, typename DerivedK>
ResidualGradient<Scalar> residual_and_gradient(const DesignMatrices<Scalar>& d,
                                               const Eigen::MatrixBase<DerivedC>& c,
                                               const Eigen::MatrixBase<DerivedK>& k) {
  if (c.size() != d.m() || k.size() != 3 || c.cols() != 1 || k.cols() != 1) {
    throw std::invalid_argument("residual_and_gradient: coefficient dimensions disagree");
  }
  const VectorX<Scalar> r = d.A * c + d.P * k - d.h;
  ResidualGradient<Scalar> out;
  out.r2 = r.squaredNorm();
  out.grad_c = Scalar(2) * (d.A.transpose() * r);
  out.grad_k = Scalar(2) * (d.P.transpose() * r);
  return out;
}

}  // namespace rbf

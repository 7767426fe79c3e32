#pragma once

// Test-only oracle: the normal systems assembled entry by entry from their
// printed summation formulas, independent of the Gram-product production
// path.

#include "rbf/assembly.hpp"
#include "rbf/fields.hpp"
#include "rbf/kernels.hpp"
#include "rbf/pointgen.hpp"

namespace rbf_test {

inline rbf::MatrixX<double> brute_force_b(const rbf::ScatteredData<double>& data,
                                          const rbf::PointSet<double>& centers,
                                          const rbf::KernelSpec<double>& kernel,
                                          rbf::Method method) {
  const rbf::Index n = data.size();
  const rbf::Index m = centers.size();
  auto phi = [&](rbf::Index i, rbf::Index j) {
    const double dx = data.sites.x(i) - centers.x(j);
    const double dy = data.sites.y(i) - centers.y(j);
    return rbf::eval_kernel(kernel, std::sqrt(dx * dx + dy * dy));
  };
  auto p = [&](rbf::Index i, rbf::Index l) {
    return l == 0 ? data.sites.x(i) : l == 1 ? data.sites.y(i) : 1.0;
  };
  rbf::MatrixX<double> b = rbf::MatrixX<double>::Zero(m + 3, m + 3);
  for (rbf::Index j = 0; j < m; ++j) {
    for (rbf::Index k = 0; k < m; ++k) {
      double sum = 0;
      for (rbf::Index i = 0; i < n; ++i) sum += phi(i, j) * phi(i, k);
      if (method == rbf::Method::Original) {
        sum += centers.x(j) * centers.x(k) + centers.y(j) * centers.y(k) + 1.0;
      }
      b(j, k) = sum;
    }
    for (rbf::Index l = 0; l < 3; ++l) {
      double sum = 0;
      for (rbf::Index i = 0; i < n; ++i) sum += phi(i, j) * p(i, l);
      b(j, m + l) = sum;
      b(m + l, j) = sum;
    }
  }
  for (rbf::Index l = 0; l < 3; ++l) {
    for (rbf::Index l2 = 0; l2 < 3; ++l2) {
      double sum = 0;
      for (rbf::Index i = 0; i < n; ++i) sum += p(i, l) * p(i, l2);
      b(m + l, m + l2) = sum;
    }
  }
  return b;
}

inline rbf::VectorX<double> brute_force_f(const rbf::ScatteredData<double>& data,
                                          const rbf::PointSet<double>& centers,
                                          const rbf::KernelSpec<double>& kernel) {
  const rbf::Index n = data.size();
  const rbf::Index m = centers.size();
  rbf::VectorX<double> f = rbf::VectorX<double>::Zero(m + 3);
  for (rbf::Index j = 0; j < m; ++j) {
    for (rbf::Index i = 0; i < n; ++i) {
      const double dx = data.sites.x(i) - centers.x(j);
      const double dy = data.sites.y(i) - centers.y(j);
      f(j) += rbf::eval_kernel(kernel, std::sqrt(dx * dx + dy * dy)) * data.values(i);
    }
  }
  for (rbf::Index i = 0; i < n; ++i) {
    f(m + 0) += data.sites.x(i) * data.values(i);
    f(m + 1) += data.sites.y(i) * data.values(i);
    f(m + 2) += data.values(i);
  }
  return f;
}

}  // namespace rbf_test

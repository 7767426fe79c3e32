#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace rbf {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// One point per row, columns (x, y).
template <typename Scalar>
using Points2 = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

// File-content failure; the message carries the offending line or field.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// The normal system could not be solved to tolerance even at the ridge cap.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}

  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

}  // namespace rbf

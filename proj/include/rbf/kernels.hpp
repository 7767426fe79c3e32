#pragma once

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rbf {

enum class KernelKind { Gauss, InverseQuadric, ThinPlateSpline };

// A global radial basis function together with its shape parameter alpha
// (units 1/length). All three kernels depend only on the product alpha*r.
template <typename Scalar>
struct KernelSpec {
  KernelKind kind;
  Scalar alpha;

  KernelSpec(KernelKind kind_, Scalar alpha_) : kind(kind_), alpha(alpha_) {
    if (std::isnan(static_cast<double>(alpha)) || !(alpha > Scalar(0)) ||
        std::isinf(static_cast<double>(alpha))) {
      throw std::invalid_argument("KernelSpec: alpha must be finite and > 0");
    }
  }
};

// phi(r). Pure scalar function; batched evaluation is the caller's business.
template <typename Scalar>
Scalar eval_kernel(const KernelSpec<Scalar>& spec, Scalar r) {
  if (std::isnan(static_cast<double>(r)) || r < Scalar(0) ||
      std::isinf(static_cast<double>(r))) {
    throw std::domain_error("eval_kernel: r must be finite and >= 0");
  }
  const Scalar t = spec.alpha * r;
  switch (spec.kind) {
    case KernelKind::Gauss:
      return std::exp(-t * t);
    case KernelKind::InverseQuadric:
      return Scalar(1) / (Scalar(1) + t * t);
    case KernelKind::ThinPlateSpline:
      // t^2 log t -> 0 as t -> 0; the branch also covers full underflow of
      // alpha*r, where log would otherwise produce -inf.
      if (t == Scalar(0)) return Scalar(0);
      return t * t * std::log(t);
  }
  throw std::invalid_argument("eval_kernel: unknown kernel kind");
}

inline const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Gauss:
      return "gauss";
    case KernelKind::InverseQuadric:
      return "iq";
    case KernelKind::ThinPlateSpline:
      return "tps";
  }
  return "?";
}

// Accepts "gauss", "iq", "tps" in any letter case.
inline KernelKind parse_kernel_kind(std::string name) {
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "gauss") return KernelKind::Gauss;
  if (name == "iq") return KernelKind::InverseQuadric;
  if (name == "tps") return KernelKind::ThinPlateSpline;
  throw std::invalid_argument("unknown kernel kind '" + name +
                              "' (expected gauss, iq or tps)");
}

}  // namespace rbf

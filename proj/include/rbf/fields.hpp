#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rbf/pointgen.hpp"
#include "rbf/types.hpp"

namespace rbf {

// Sample sites x_i paired with their scalar values h_i.
template <typename Scalar>
struct ScatteredData {
  PointSet<Scalar> sites;
  VectorX<Scalar> values;

  Index size() const { return sites.size(); }
};

// A named ground-truth surface with its natural domain.
template <typename Scalar>
struct Field {
  std::string name;
  Domain2<Scalar> domain;
  std::function<Scalar(Scalar, Scalar)> value;
};

namespace detail {
// Unnormalized sinc: sin(t)/t with sinc(0) = 1.
template <typename Scalar>
Scalar sinc(Scalar t) {
  if (t == Scalar(0)) return Scalar(1);
  return std::sin(t) / t;
}
}  // namespace detail

// sinc(pi x / 1000) * sinc(pi y / 500); natural domain [0,1000] x [0,500].
template <typename Scalar>
Scalar sinc2d(Scalar x, Scalar y) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  return detail::sinc(pi * (x / Scalar(1000))) * detail::sinc(pi * (y / Scalar(500)));
}

// Franke's four-exponential test surface on [0,1]^2.
template <typename Scalar>
Scalar franke(Scalar x, Scalar y) {
  const Scalar t1 =
      Scalar(0.75) * std::exp(-(std::pow(Scalar(9) * x - Scalar(2), 2) +
                                std::pow(Scalar(9) * y - Scalar(2), 2)) / Scalar(4));
  const Scalar t2 =
      Scalar(0.75) * std::exp(-(std::pow(Scalar(9) * x + Scalar(1), 2) / Scalar(49) +
                                (Scalar(9) * y + Scalar(1)) / Scalar(10)));
  const Scalar t3 =
      Scalar(0.5) * std::exp(-(std::pow(Scalar(9) * x - Scalar(7), 2) +
                               std::pow(Scalar(9) * y - Scalar(3), 2)) / Scalar(4));
  const Scalar t4 =
      Scalar(-0.2) * std::exp(-(std::pow(Scalar(9) * x - Scalar(4), 2) +
                                std::pow(Scalar(9) * y - Scalar(7), 2)));
  return t1 + t2 + t3 + t4;
}

template <typename Scalar = double>
Field<Scalar> sinc2d_field() {
  return {"sinc2d", Domain2<Scalar>(0, 1000, 0, 500), [](Scalar x, Scalar y) { return sinc2d(x, y); }};
}

template <typename Scalar = double>
Field<Scalar> franke_field() {
  return {"franke", Domain2<Scalar>(0, 1, 0, 1), [](Scalar x, Scalar y) { return franke(x, y); }};
}

template <typename Scalar = double>
Field<Scalar> make_field(const std::string& name) {
  if (name == "sinc2d") return sinc2d_field<Scalar>();
  if (name == "franke") return franke_field<Scalar>();
  throw std::invalid_argument("unknown field '" + name + "' (expected sinc2d or franke)");
}

// values[i] = field(sites[i]); order preserved. Every site must lie in the
// field's domain.
template <typename Scalar>
ScatteredData<Scalar> sample_field(const Field<Scalar>& field, const PointSet<Scalar>& sites) {
  ScatteredData<Scalar> out;
  out.sites = sites;
  out.values.resize(sites.size());
  for (Index i = 0; i < sites.size(); ++i) {
    if (!field.domain.contains(sites.x(i), sites.y(i))) {
      throw std::domain_error("sample_field: site " + std::to_string(i) +
                              " lies outside the domain of field '" + field.name + "'");
    }
    out.values(i) = field.value(sites.x(i), sites.y(i));
  }
  return out;
}

}  // namespace rbf

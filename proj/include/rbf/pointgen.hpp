#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "rbf/types.hpp"

namespace rbf {

template <typename Scalar>
struct Domain2 {
  Scalar x_min, x_max, y_min, y_max;

  Domain2(Scalar x_min_, Scalar x_max_, Scalar y_min_, Scalar y_max_)
      : x_min(x_min_), x_max(x_max_), y_min(y_min_), y_max(y_max_) {
    const bool finite =
        std::isfinite(static_cast<double>(x_min)) && std::isfinite(static_cast<double>(x_max)) &&
        std::isfinite(static_cast<double>(y_min)) && std::isfinite(static_cast<double>(y_max));
    if (!finite || !(x_min < x_max) || !(y_min < y_max)) {
      throw std::invalid_argument("Domain2: require finite x_min < x_max and y_min < y_max");
    }
  }

  Scalar width() const { return x_max - x_min; }
  Scalar height() const { return y_max - y_min; }

  bool contains(Scalar x, Scalar y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

enum class Provenance { Halton, Epsilon, RegularGrid, External };

template <typename Scalar>
struct PointSet {
  Points2<Scalar> points;
  Provenance provenance = Provenance::External;

  Index size() const { return points.rows(); }
  Scalar x(Index i) const { return points(i, 0); }
  Scalar y(Index i) const { return points(i, 1); }
};

// Van der Corput radical inverse of `index` in `base`: the digits are
// reversed as exact integers and divided once, so the result is the
// correctly rounded value of the underlying rational.
inline double radical_inverse(std::uint64_t base, std::uint64_t index) {
  std::uint64_t reversed = 0;
  std::uint64_t denom = 1;
  while (index > 0) {
    reversed = reversed * base + index % base;
    denom *= base;
    index /= base;
  }
  return static_cast<double>(reversed) / static_cast<double>(denom);
}

// Halton points in bases (2, 3), affinely mapped onto `domain`. Point k uses
// sequence index start_index + k; start_index >= 1 skips the degenerate
// (0, 0) sample, so unit-square coordinates always lie in (0, 1).
template <typename Scalar>
PointSet<Scalar> halton_points(Index n, std::uint64_t start_index, const Domain2<Scalar>& domain) {
  if (n < 0) throw std::invalid_argument("halton_points: n must be >= 0");
  if (start_index < 1) throw std::invalid_argument("halton_points: start_index must be >= 1");
  PointSet<Scalar> out;
  out.provenance = Provenance::Halton;
  out.points.resize(n, 2);
  for (Index k = 0; k < n; ++k) {
    const std::uint64_t idx = start_index + static_cast<std::uint64_t>(k);
    const Scalar u = static_cast<Scalar>(radical_inverse(2, idx));
    const Scalar v = static_cast<Scalar>(radical_inverse(3, idx));
    out.points(k, 0) = domain.x_min + u * domain.width();
    out.points(k, 1) = domain.y_min + v * domain.height();
  }
  return out;
}

// nx-by-ny tensor grid including the domain corners, row-major
// (y outer, x inner). Boundary nodes are placed on the domain edges exactly.
template <typename Scalar>
PointSet<Scalar> regular_grid(Index nx, Index ny, const Domain2<Scalar>& domain) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("regular_grid: require nx >= 2 and ny >= 2");
  PointSet<Scalar> out;
  out.provenance = Provenance::RegularGrid;
  out.points.resize(nx * ny, 2);
  const Scalar sx = domain.width() / static_cast<Scalar>(nx - 1);
  const Scalar sy = domain.height() / static_cast<Scalar>(ny - 1);
  Index k = 0;
  for (Index iy = 0; iy < ny; ++iy) {
    const Scalar gy = (iy == ny - 1) ? domain.y_max : domain.y_min + static_cast<Scalar>(iy) * sy;
    for (Index ix = 0; ix < nx; ++ix, ++k) {
      out.points(k, 0) = (ix == nx - 1) ? domain.x_max : domain.x_min + static_cast<Scalar>(ix) * sx;
      out.points(k, 1) = gy;
    }
  }
  return out;
}

namespace detail {
// Uniform double in [0, 1) from the top 53 bits of one mt19937_64 draw.
// mt19937_64 is fully specified by the standard, so point sets reproduce
// bit-exactly across builds and platforms for a given seed.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace detail

// Regular grid with each coordinate independently drifted by a uniform draw
// in [-jitter_fraction*s/2, +jitter_fraction*s/2), s being the grid spacing
// in that axis, then clamped to the domain. Draw order is row-major,
// x before y, so a (nx, ny, seed) triple pins the whole set.
template <typename Scalar>
PointSet<Scalar> epsilon_points(Index nx, Index ny, Scalar jitter_fraction, std::uint64_t seed,
                                const Domain2<Scalar>& domain) {
  if (!(jitter_fraction >= Scalar(0) && jitter_fraction <= Scalar(1))) {
    throw std::invalid_argument("epsilon_points: jitter_fraction must be in [0, 1]");
  }
  PointSet<Scalar> out = regular_grid(nx, ny, domain);
  out.provenance = Provenance::Epsilon;
  const Scalar sx = domain.width() / static_cast<Scalar>(nx - 1);
  const Scalar sy = domain.height() / static_cast<Scalar>(ny - 1);
  std::mt19937_64 rng(seed);
  for (Index k = 0; k < out.size(); ++k) {
    const Scalar dx = (static_cast<Scalar>(detail::uniform_unit(rng)) - Scalar(0.5)) * jitter_fraction * sx;
    const Scalar dy = (static_cast<Scalar>(detail::uniform_unit(rng)) - Scalar(0.5)) * jitter_fraction * sy;
    out.points(k, 0) = std::clamp(out.points(k, 0) + dx, domain.x_min, domain.x_max);
    out.points(k, 1) = std::clamp(out.points(k, 1) + dy, domain.y_min, domain.y_max);
  }
  return out;
}

}  // namespace rbf

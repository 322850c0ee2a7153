// SPDX-License-Identifier: Apache-2.0
//
// infocus: wideband near-field beamforming for circular phased arrays
// Copyright (C) 2026 The infocus authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef INFOCUS_GEOMETRY_HPP
#define INFOCUS_GEOMETRY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "infocus/constants.hpp"

namespace infocus {

template <typename Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Coords2 = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

/// Planar transmit array in z = 0. Element positions are rows of `coords`.
///
/// `normalization_count` is the element count used for the 1/sqrt(N) weight
/// normalization. It equals coords.rows() for a full array and the parent
/// array's count for a thinned sub-array (per-antenna power constraint).
template <typename Scalar = double>
struct ArrayGeometry {
  Scalar radius{};
  Scalar spacing{};
  Coords2<Scalar> coords;
  std::size_t normalization_count{};

  std::size_t size() const { return static_cast<std::size_t>(coords.rows()); }
  auto x() const { return coords.col(0).array(); }
  auto y() const { return coords.col(1).array(); }
};

/// Receiver at distance `ell` from the array center, at signed angle `gamma`
/// from boresight in the xz-plane.
template <typename Scalar = double>
struct RxPlacement {
  Scalar ell{};
  Scalar gamma{};

  RxPlacement() = default;
  RxPlacement(Scalar distance, Scalar angle) : ell(distance), gamma(angle) {
    if (!(ell > Scalar(0)) || !std::isfinite(ell))
      throw std::invalid_argument("RxPlacement: distance must be positive");
    if (!(std::abs(gamma) < kPi<Scalar> / Scalar(2)))
      throw std::invalid_argument("RxPlacement: |gamma| must be below pi/2");
  }

  Eigen::Matrix<Scalar, 3, 1> position() const {
    return {-ell * std::sin(gamma), Scalar(0), ell * std::cos(gamma)};
  }
  /// Distance from the array center to the RX projection on the array plane.
  Scalar projection_offset() const { return ell * std::abs(std::sin(gamma)); }
  /// Height of the RX above the array plane.
  Scalar height() const { return ell * std::cos(gamma); }
};

template <typename Scalar = double>
struct Scenario {
  ArrayGeometry<Scalar> geometry;
  RxPlacement<Scalar> rx;
  Scalar carrier{};       // f_c, Hz
  Scalar bandwidth{};     // B, Hz
  std::optional<int> q_bits;  // nullopt: continuous phase shifters
  std::size_t n_sub{512};
  Scalar tx_power{Scalar(1e-3)};  // W
  Scalar temperature{Scalar(290)};  // K
};

template <typename Scalar>
void validate(const Scenario<Scalar>& s) {
  if (s.geometry.size() == 0) throw std::invalid_argument("Scenario: empty array");
  if (!(s.carrier > Scalar(0))) throw std::invalid_argument("Scenario: carrier must be positive");
  if (!(s.bandwidth >= Scalar(0)) || !(s.bandwidth < Scalar(2) * s.carrier))
    throw std::invalid_argument("Scenario: bandwidth must satisfy 0 <= B < 2 f_c");
  if (s.n_sub < 1) throw std::invalid_argument("Scenario: n_sub must be >= 1");
  if (s.q_bits && *s.q_bits < 1) throw std::invalid_argument("Scenario: q_bits must be >= 1");
  if (!(s.tx_power > Scalar(0))) throw std::invalid_argument("Scenario: tx_power must be positive");
  if (!(s.temperature > Scalar(0))) throw std::invalid_argument("Scenario: temperature must be positive");
}

/// All lattice points (i*spacing, j*spacing) inside the closed disc of `radius`.
/// Rows are ordered by j, then i, so the layout is reproducible.
template <typename Scalar = double>
ArrayGeometry<Scalar> build_array(Scalar radius, Scalar spacing) {
  if (!(radius > Scalar(0)) || !(spacing > Scalar(0)))
    throw std::invalid_argument("build_array: radius and spacing must be positive");

  // Boundary points (e.g. R/spacing integral) must survive rounding in R/spacing.
  const Scalar ratio = radius / spacing;
  const long double limit = static_cast<long double>(ratio) * ratio * (1.0L + 1e-12L);
  const long extent = static_cast<long>(std::floor(ratio * (Scalar(1) + Scalar(1e-12))));

  std::size_t count = 0;
  for (long j = -extent; j <= extent; ++j)
    for (long i = -extent; i <= extent; ++i)
      if (static_cast<long double>(i * i + j * j) <= limit) ++count;
  if (count == 0) throw std::domain_error("build_array: no lattice point inside the disc");

  ArrayGeometry<Scalar> g;
  g.radius = radius;
  g.spacing = spacing;
  g.coords.resize(static_cast<Eigen::Index>(count), 2);
  Eigen::Index row = 0;
  for (long j = -extent; j <= extent; ++j)
    for (long i = -extent; i <= extent; ++i)
      if (static_cast<long double>(i * i + j * j) <= limit) {
        g.coords(row, 0) = Scalar(i) * spacing;
        g.coords(row, 1) = Scalar(j) * spacing;
        ++row;
      }
  g.normalization_count = count;
  return g;
}

template <typename Scalar>
Scalar distance_to_rx(Scalar x, Scalar y, const RxPlacement<Scalar>& rx) {
  const Scalar dx = x + rx.ell * std::sin(rx.gamma);
  const Scalar h = rx.ell * std::cos(rx.gamma);
  return std::sqrt(dx * dx + y * y + h * h);
}

/// Element-wise distance from every antenna to the receiver.
template <typename Scalar>
ArrayX<Scalar> distance_to_rx(const ArrayGeometry<Scalar>& g, const RxPlacement<Scalar>& rx) {
  const Scalar sx = rx.ell * std::sin(rx.gamma);
  const Scalar h = rx.ell * std::cos(rx.gamma);
  return ((g.x() + sx).square() + g.y().square() + h * h).sqrt();
}

enum class PlacementClass { Boresight, ProjectionOutside, ProjectionInside };

inline const char* to_string(PlacementClass c) {
  switch (c) {
    case PlacementClass::Boresight: return "boresight";
    case PlacementClass::ProjectionOutside: return "projection-outside";
    case PlacementClass::ProjectionInside: return "projection-inside";
  }
  return "unknown";
}

struct Placement {
  PlacementClass placement_class;
  bool flipped;  // gamma < 0: design for |gamma| and mirror about the y-axis
};

template <typename Scalar>
inline constexpr Scalar kBoresightTolerance = Scalar(1e-9);

template <typename Scalar>
Placement rx_projection_class(const ArrayGeometry<Scalar>& g, const RxPlacement<Scalar>& rx) {
  const bool flipped = rx.gamma < Scalar(0);
  if (std::abs(rx.gamma) < kBoresightTolerance<Scalar>) return {PlacementClass::Boresight, false};
  if (rx.projection_offset() >= g.radius) return {PlacementClass::ProjectionOutside, flipped};
  return {PlacementClass::ProjectionInside, flipped};
}

/// 8 R^2 / lambda_c.
template <typename Scalar>
Scalar fraunhofer_distance(const ArrayGeometry<Scalar>& g, Scalar carrier) {
  if (!(carrier > Scalar(0))) throw std::invalid_argument("fraunhofer_distance: carrier must be positive");
  const Scalar wavelength = kSpeedOfLight<Scalar> / carrier;
  return Scalar(8) * g.radius * g.radius / wavelength;
}

template <typename Scalar>
Scalar half_wavelength(Scalar carrier) {
  return kSpeedOfLight<Scalar> / (Scalar(2) * carrier);
}

}  // namespace infocus

#endif  // INFOCUS_GEOMETRY_HPP

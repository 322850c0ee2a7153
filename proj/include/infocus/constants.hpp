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

#ifndef INFOCUS_CONSTANTS_HPP
#define INFOCUS_CONSTANTS_HPP

#include <numbers>

namespace infocus {

template <typename Scalar = double>
struct PhysicalConstants {
  static constexpr Scalar speed_of_light = Scalar(2.9979e8);  // m/s
  static constexpr Scalar planck = Scalar(6.625e-34);         // J s
  static constexpr Scalar boltzmann = Scalar(1.3806e-23);     // J/K
};

template <typename Scalar = double>
inline constexpr Scalar kSpeedOfLight = PhysicalConstants<Scalar>::speed_of_light;

template <typename Scalar = double>
inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

template <typename Scalar = double>
inline constexpr Scalar kTwoPi = Scalar(2) * std::numbers::pi_v<Scalar>;

template <typename Scalar>
constexpr Scalar deg_to_rad(Scalar deg) {
  return deg * kPi<Scalar> / Scalar(180);
}

template <typename Scalar>
constexpr Scalar rad_to_deg(Scalar rad) {
  return rad * Scalar(180) / kPi<Scalar>;
}

}  // namespace infocus

#endif  // INFOCUS_CONSTANTS_HPP

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

#ifndef INFOCUS_BEAM_DESIGN_HPP
#define INFOCUS_BEAM_DESIGN_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>

#include "infocus/channel.hpp"
#include "infocus/constants.hpp"
#include "infocus/geometry.hpp"

namespace infocus {

inline constexpr std::size_t kDefaultChirpGrid = 4096;

/// One-dimensional spatial chirp sampled on a uniform grid of RX distances u.
///
///   amplitude  a(u) or b(u), in [0, 1]
///   frequency  psi'(u), from -pi B / c to +pi B / c, non-decreasing
///   phase      psi(u), cumulative integral of frequency, psi(u.front()) = 0
template <typename Scalar = double>
struct ChirpDesign {
  ArrayX<Scalar> u;
  ArrayX<Scalar> amplitude;
  ArrayX<Scalar> frequency;
  ArrayX<Scalar> phase;
  Scalar bandwidth{};

  Scalar start() const { return u(0); }
  Scalar end() const { return u(u.size() - 1); }

  /// (omega_end - omega_start) * (u_end - u_start).
  Scalar dispersion_factor() const {
    return (frequency(frequency.size() - 1) - frequency(0)) * (end() - start());
  }

  /// psi at an arbitrary u by linear interpolation. Points outside the grid
  /// are accepted within a relative tolerance of the span and clamped.
  Scalar phase_at(Scalar v) const {
    const Eigen::Index n = u.size();
    const Scalar span = end() - start();
    const Scalar tol = Scalar(1e-9) * std::max(span, std::abs(end()));
    if (v < start() - tol || v > end() + tol)
      throw std::out_of_range("ChirpDesign::phase_at: u outside the chirp domain");
    if (n == 1 || span <= Scalar(0)) return phase(0);
    const Scalar t = std::clamp((v - start()) / span * Scalar(n - 1), Scalar(0), Scalar(n - 1));
    const Eigen::Index i = std::min<Eigen::Index>(static_cast<Eigen::Index>(t), n - 2);
    const Scalar w = t - Scalar(i);
    return phase(i) + w * (phase(i + 1) - phase(i));
  }
};

template <typename Scalar>
ArrayX<Scalar> uniform_grid(Scalar lo, Scalar hi, std::size_t points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  ArrayX<Scalar> g = ArrayX<Scalar>::LinSpaced(static_cast<Eigen::Index>(points), lo, hi);
  g(g.size() - 1) = hi;
  return g;
}

/// 2 pi B (sqrt(l^2 + R^2) - l) / c for the boresight chirp.
template <typename Scalar>
Scalar dispersion_factor(Scalar ell, Scalar radius, Scalar bandwidth) {
  if (!(ell > Scalar(0)) || !(radius > Scalar(0)) || bandwidth < Scalar(0))
    throw std::invalid_argument("dispersion_factor: inputs must be positive");
  return kTwoPi<Scalar> * bandwidth * aperture_path_spread(ell, radius) / kSpeedOfLight<Scalar>;
}

/// Coefficients of psi(s) = alpha s + beta s^2 with psi'(l) = -pi B / c and
/// psi'(sqrt(l^2 + R^2)) = +pi B / c.
template <typename Scalar>
std::pair<Scalar, Scalar> boresight_chirp_coefficients(Scalar ell, Scalar radius, Scalar bandwidth) {
  const Scalar c = kSpeedOfLight<Scalar>;
  const Scalar spread = aperture_path_spread(ell, radius);
  const Scalar far = ell + spread;
  const Scalar beta = kPi<Scalar> * bandwidth / (c * spread);
  const Scalar alpha = -kPi<Scalar> * bandwidth * (far + ell) / (c * spread);
  return {alpha, beta};
}

/// Linear chirp on s in [l, sqrt(l^2 + R^2)], offset so that psi(l) = 0.
template <typename Scalar>
ChirpDesign<Scalar> design_boresight_chirp(Scalar ell, Scalar radius, Scalar bandwidth,
                                           std::size_t points = kDefaultChirpGrid) {
  if (!(ell > Scalar(0)) || !(radius > Scalar(0)) || bandwidth < Scalar(0))
    throw std::invalid_argument("design_boresight_chirp: inputs must be positive");
  const auto [alpha, beta] = boresight_chirp_coefficients(ell, radius, bandwidth);
  const Scalar edge = kPi<Scalar> * bandwidth / kSpeedOfLight<Scalar>;

  ChirpDesign<Scalar> d;
  d.bandwidth = bandwidth;
  d.u = uniform_grid(ell, ell + aperture_path_spread(ell, radius), points);
  d.amplitude = ArrayX<Scalar>::Ones(d.u.size());
  d.frequency = alpha + Scalar(2) * beta * d.u;
  d.frequency(0) = -edge;
  d.frequency(d.frequency.size() - 1) = edge;
  d.phase = alpha * (d.u - ell) + beta * (d.u.square() - ell * ell);
  return d;
}

/// [u_1, u_2] for the arc-angle amplitude a(u): distances from the receiver
/// to the nearest and farthest points of the disc rim seen from its projection.
template <typename Scalar>
std::pair<Scalar, Scalar> arc_amplitude_domain(Scalar ell, Scalar gamma, Scalar radius) {
  const Scalar offset = ell * std::sin(gamma);
  const Scalar h = ell * std::cos(gamma);
  const Scalar p1 = std::abs(offset - radius);
  const Scalar p2 = offset + radius;
  return {std::sqrt(p1 * p1 + h * h), std::sqrt(p2 * p2 + h * h)};
}

/// Fraction of the circle of radius p about the RX projection that lies in
/// the disc, expressed in the RX distance u = sqrt(p^2 + l^2 cos^2 gamma).
template <typename Scalar>
Scalar amplitude_modulation_a(Scalar u, Scalar ell, Scalar gamma, Scalar radius) {
  if (!(gamma > Scalar(0))) throw std::invalid_argument("amplitude_modulation_a: gamma must be positive");
  const auto [u1, u2] = arc_amplitude_domain(ell, gamma, radius);
  const Scalar tol = Scalar(1e-12) * u2;
  if (u < u1 - tol || u > u2 + tol) throw std::out_of_range("amplitude_modulation_a: u outside [u1, u2]");
  u = std::clamp(u, u1, u2);

  const Scalar offset = ell * std::sin(gamma);
  const Scalar h = ell * std::cos(gamma);
  const Scalar p2 = std::max(u * u - h * h, Scalar(0));
  const Scalar p = std::sqrt(p2);
  if (p == Scalar(0)) return Scalar(0);
  Scalar arg = (p2 + offset * offset - radius * radius) / (Scalar(2) * offset * p);
  if (std::abs(arg) > Scalar(1) + Scalar(1e-12))
    throw std::domain_error("amplitude_modulation_a: cosine-rule argument outside [-1, 1]");
  arg = std::clamp(arg, Scalar(-1), Scalar(1));
  return std::acos(arg) / kPi<Scalar>;
}

/// Amplitude for a receiver whose projection lies inside the disc: 1 on the
/// inner disc of radius R - l sin gamma about the projection, a(u) beyond it.
template <typename Scalar>
Scalar amplitude_modulation_b(Scalar u, Scalar ell, Scalar gamma, Scalar radius) {
  const Scalar offset = ell * std::sin(gamma);
  if (!(offset > Scalar(0)) || !(offset < radius))
    throw std::invalid_argument("amplitude_modulation_b: receiver projection must lie strictly inside the disc");
  const Scalar h = ell * std::cos(gamma);
  const Scalar inner = std::sqrt(h * h + (radius - offset) * (radius - offset));
  const Scalar outer = std::sqrt(h * h + (radius + offset) * (radius + offset));
  const Scalar tol = Scalar(1e-12) * outer;
  if (u < h - tol || u > outer + tol) throw std::out_of_range("amplitude_modulation_b: u outside the chirp domain");
  if (u <= inner) return Scalar(1);
  return amplitude_modulation_a(u, ell, gamma, radius);
}

/// psi'(u) with psi'' proportional to amp^2, pinned to -pi B / c at the first
/// sample and +pi B / c at the last. Integrals use the composite trapezoid rule.
template <typename Scalar>
ArrayX<Scalar> stationary_phase_frequency(const ArrayX<Scalar>& u, const ArrayX<Scalar>& amp, Scalar bandwidth) {
  if (u.size() < 2 || u.size() != amp.size())
    throw std::invalid_argument("stationary_phase_frequency: need matching grids of at least two points");
  if ((amp < Scalar(0)).any()) throw std::invalid_argument("stationary_phase_frequency: amplitude must be >= 0");

  const Eigen::Index n = u.size();
  ArrayX<Scalar> cumulative(n);
  cumulative(0) = Scalar(0);
  for (Eigen::Index i = 1; i < n; ++i)
    cumulative(i) = cumulative(i - 1) +
                    Scalar(0.5) * (u(i) - u(i - 1)) * (amp(i - 1) * amp(i - 1) + amp(i) * amp(i));
  const Scalar total = cumulative(n - 1);
  if (!(total > Scalar(0))) throw std::domain_error("stationary_phase_frequency: amplitude is identically zero");

  const Scalar edge = kPi<Scalar> * bandwidth / kSpeedOfLight<Scalar>;
  ArrayX<Scalar> freq = Scalar(2) * edge * (cumulative / total) - edge;
  freq(0) = -edge;
  freq(n - 1) = edge;
  return freq;
}

/// Cumulative trapezoid integral of freq over u, starting from zero.
template <typename Scalar>
ArrayX<Scalar> integrate_phase(const ArrayX<Scalar>& u, const ArrayX<Scalar>& freq) {
  if (u.size() != freq.size()) throw std::invalid_argument("integrate_phase: grid size mismatch");
  ArrayX<Scalar> phase(u.size());
  if (u.size() == 0) return phase;
  phase(0) = Scalar(0);
  for (Eigen::Index i = 1; i < u.size(); ++i)
    phase(i) = phase(i - 1) + Scalar(0.5) * (u(i) - u(i - 1)) * (freq(i - 1) + freq(i));
  return phase;
}

template <typename Scalar>
ChirpDesign<Scalar> design_stationary_phase_chirp(ArrayX<Scalar> u, ArrayX<Scalar> amp, Scalar bandwidth) {
  ChirpDesign<Scalar> d;
  d.bandwidth = bandwidth;
  d.frequency = stationary_phase_frequency(u, amp, bandwidth);
  d.phase = integrate_phase(u, d.frequency);
  d.u = std::move(u);
  d.amplitude = std::move(amp);
  return d;
}

/// Chirp for a receiver whose projection falls outside the disc (gamma > 0).
template <typename Scalar>
ChirpDesign<Scalar> design_outside_chirp(Scalar ell, Scalar gamma, Scalar radius, Scalar bandwidth,
                                         std::size_t points = kDefaultChirpGrid) {
  const auto [u1, u2] = arc_amplitude_domain(ell, gamma, radius);
  ArrayX<Scalar> u = uniform_grid(u1, u2, points);
  ArrayX<Scalar> amp = u.unaryExpr([&](Scalar v) { return amplitude_modulation_a(v, ell, gamma, radius); });
  return design_stationary_phase_chirp(std::move(u), std::move(amp), bandwidth);
}

/// Chirp for a receiver whose projection falls inside the disc (gamma > 0).
template <typename Scalar>
ChirpDesign<Scalar> design_inside_chirp(Scalar ell, Scalar gamma, Scalar radius, Scalar bandwidth,
                                        std::size_t points = kDefaultChirpGrid) {
  const Scalar offset = ell * std::sin(gamma);
  const Scalar h = ell * std::cos(gamma);
  const Scalar outer = std::sqrt(h * h + (radius + offset) * (radius + offset));
  ArrayX<Scalar> u = uniform_grid(h, outer, points);
  ArrayX<Scalar> amp = u.unaryExpr([&](Scalar v) { return amplitude_modulation_b(v, ell, gamma, radius); });
  return design_stationary_phase_chirp(std::move(u), std::move(amp), bandwidth);
}

/// psi_des(x, y) = psi(u(x, y)), with u the antenna-to-receiver distance.
/// `flip` mirrors the array about the y-axis, which designs a gamma < 0
/// receiver from the chirp built for |gamma|.
template <typename Scalar>
ArrayX<Scalar> map_chirp_to_2d(const ChirpDesign<Scalar>& chirp, const ArrayGeometry<Scalar>& g,
                               const RxPlacement<Scalar>& rx, bool flip = false) {
  ArrayGeometry<Scalar> mapped = g;
  if (flip) mapped.coords.col(0) = -mapped.coords.col(0);
  const ArrayX<Scalar> u = distance_to_rx(mapped, rx);
  return u.unaryExpr([&](Scalar v) { return chirp.phase_at(v); });
}

template <typename Scalar = double>
struct DesignedBeam {
  PhaseProfile<Scalar> profile;
  std::optional<ChirpDesign<Scalar>> chirp;
  PlacementClass placement_class{PlacementClass::Boresight};
  Scalar dispersion_factor{};
};

/// Misfocus-robust profile phi = phi_std + psi_des for the scenario's receiver.
template <typename Scalar>
DesignedBeam<Scalar> design_infocus_beam(const Scenario<Scalar>& s, std::size_t points = kDefaultChirpGrid) {
  validate(s);
  const Placement placement = rx_projection_class(s.geometry, s.rx);
  const Scalar ell = s.rx.ell;
  const Scalar gamma = std::abs(s.rx.gamma);
  const Scalar radius = s.geometry.radius;

  DesignedBeam<Scalar> beam;
  beam.placement_class = placement.placement_class;
  RxPlacement<Scalar> design_rx = s.rx;
  switch (placement.placement_class) {
    case PlacementClass::Boresight:
      beam.chirp = design_boresight_chirp(ell, radius, s.bandwidth, points);
      design_rx = RxPlacement<Scalar>(ell, Scalar(0));
      break;
    case PlacementClass::ProjectionOutside:
      beam.chirp = design_outside_chirp(ell, gamma, radius, s.bandwidth, points);
      design_rx = RxPlacement<Scalar>(ell, gamma);
      break;
    case PlacementClass::ProjectionInside:
      beam.chirp = design_inside_chirp(ell, gamma, radius, s.bandwidth, points);
      design_rx = RxPlacement<Scalar>(ell, gamma);
      break;
  }
  beam.dispersion_factor = beam.chirp->dispersion_factor();

  const ArrayX<Scalar> psi = map_chirp_to_2d(*beam.chirp, s.geometry, design_rx, placement.flipped);
  const Scalar k = kTwoPi<Scalar> * s.carrier / kSpeedOfLight<Scalar>;
  beam.profile.phases = wrap_phase<Scalar>(k * distance_to_rx(s.geometry, s.rx) + psi);
  return beam;
}

/// Index of the nearest element of {2 pi k / 2^q} in circular distance; an
/// exact tie goes to the smaller index.
template <typename Scalar>
int quantize_index(Scalar phase, int q_bits) {
  if (q_bits < 1 || q_bits > 30) throw std::invalid_argument("quantize_index: q_bits must be in [1, 30]");
  const int levels = 1 << q_bits;
  const Scalar t = wrap_phase(phase) / kTwoPi<Scalar> * Scalar(levels);
  const int lo = std::min(static_cast<int>(std::floor(t)), levels - 1);
  const int hi = (lo + 1) % levels;
  const Scalar frac = t - Scalar(lo);
  if (frac < Scalar(0.5)) return lo;
  if (frac > Scalar(0.5)) return hi;
  return std::min(lo, hi);
}

template <typename Scalar>
PhaseProfile<Scalar> quantize_profile(const PhaseProfile<Scalar>& profile, int q_bits) {
  if (q_bits < 1) throw std::invalid_argument("quantize_profile: q_bits must be >= 1");
  const Scalar step = kTwoPi<Scalar> / Scalar(1 << q_bits);
  PhaseProfile<Scalar> out;
  out.quantized = true;
  out.q_bits = q_bits;
  out.phases = profile.phases.unaryExpr([&](Scalar p) { return Scalar(quantize_index(p, q_bits)) * step; });
  return out;
}

/// g_hat(omega) = integral of amp(u) e^{j psi(u)} e^{-j omega u} du over the
/// chirp grid (trapezoid rule).
template <typename Scalar>
std::complex<Scalar> chirp_spectrum(const ChirpDesign<Scalar>& chirp, Scalar omega) {
  const Eigen::Index n = chirp.u.size();
  std::complex<Scalar> sum{};
  std::complex<Scalar> prev = std::polar(chirp.amplitude(0), chirp.phase(0) - omega * chirp.u(0));
  for (Eigen::Index i = 1; i < n; ++i) {
    const std::complex<Scalar> cur = std::polar(chirp.amplitude(i), chirp.phase(i) - omega * chirp.u(i));
    sum += Scalar(0.5) * (chirp.u(i) - chirp.u(i - 1)) * (prev + cur);
    prev = cur;
  }
  return sum;
}

/// Fraction of the chirp's energy whose spectrum falls outside
/// [-pi B / c, pi B / c]. Total energy comes from Parseval,
/// 2 pi * integral |amp|^2 du; the in-band part by Simpson's rule in omega.
template <typename Scalar>
Scalar out_of_band_energy_fraction(const ChirpDesign<Scalar>& chirp, std::size_t omega_points = 2001) {
  if (omega_points < 3) throw std::invalid_argument("out_of_band_energy_fraction: need >= 3 points");
  if (omega_points % 2 == 0) ++omega_points;
  const Eigen::Index n = chirp.u.size();
  Scalar energy_u = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    energy_u += Scalar(0.5) * (chirp.u(i) - chirp.u(i - 1)) *
                (chirp.amplitude(i - 1) * chirp.amplitude(i - 1) + chirp.amplitude(i) * chirp.amplitude(i));
  const Scalar total = kTwoPi<Scalar> * energy_u;

  const Scalar edge = kPi<Scalar> * chirp.bandwidth / kSpeedOfLight<Scalar>;
  const Scalar h = Scalar(2) * edge / Scalar(omega_points - 1);
  Scalar in_band = 0;
  for (std::size_t k = 0; k < omega_points; ++k) {
    const Scalar w = (k == 0 || k + 1 == omega_points) ? Scalar(1) : (k % 2 ? Scalar(4) : Scalar(2));
    in_band += w * std::norm(chirp_spectrum(chirp, -edge + Scalar(k) * h));
  }
  in_band *= h / Scalar(3);
  return Scalar(1) - in_band / total;
}

}  // namespace infocus

#endif  // INFOCUS_BEAM_DESIGN_HPP

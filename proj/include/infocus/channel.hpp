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

#ifndef INFOCUS_CHANNEL_HPP
#define INFOCUS_CHANNEL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "infocus/constants.hpp"
#include "infocus/geometry.hpp"
#include "infocus/parallel.hpp"

namespace infocus {

template <typename Scalar>
using ArrayXc = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Reduces an angle to [0, 2*pi).
template <typename Scalar>
Scalar wrap_phase(Scalar phase) {
  Scalar r = std::fmod(phase, kTwoPi<Scalar>);
  if (r < Scalar(0)) r += kTwoPi<Scalar>;
  if (r >= kTwoPi<Scalar>) r = Scalar(0);
  return r;
}

template <typename Scalar>
ArrayX<Scalar> wrap_phase(const ArrayX<Scalar>& phases) {
  return phases.unaryExpr([](Scalar p) { return wrap_phase(p); });
}

/// Per-antenna phase shifts, aligned with ArrayGeometry::coords.
template <typename Scalar = double>
struct PhaseProfile {
  ArrayX<Scalar> phases;
  bool quantized{false};
  std::optional<int> q_bits;

  std::size_t size() const { return static_cast<std::size_t>(phases.size()); }

  /// e^{j phi} / sqrt(normalization_count).
  ArrayXc<Scalar> weights(std::size_t normalization_count) const {
    const Scalar scale = Scalar(1) / std::sqrt(Scalar(normalization_count));
    return phases.unaryExpr([scale](Scalar p) { return std::polar(scale, p); });
  }
};

/// Beamformed SISO response g(f_k) on a strictly increasing frequency grid.
template <typename Scalar = double>
struct EquivalentChannel {
  ArrayX<Scalar> freqs;
  ArrayXc<Scalar> gains;

  ArrayX<Scalar> power() const { return gains.abs2(); }
  ArrayX<Scalar> gain_db() const {
    return gains.abs().unaryExpr([](Scalar a) { return Scalar(20) * std::log10(a); });
  }
};

/// omega = 2 pi (f - f_c) / c, in rad/m.
template <typename Scalar>
Scalar spatial_frequency(Scalar f, Scalar carrier) {
  return kTwoPi<Scalar> * (f - carrier) / kSpeedOfLight<Scalar>;
}

/// sin(x)/x.
template <typename Scalar>
Scalar sinc(Scalar x) {
  if (std::abs(x) < Scalar(1e-6)) return Scalar(1) - x * x / Scalar(6);
  return std::sin(x) / x;
}

/// Free-space LoS gain from the antenna at (x, y) to the receiver.
template <typename Scalar>
std::complex<Scalar> los_channel(Scalar x, Scalar y, const RxPlacement<Scalar>& rx, Scalar f) {
  if (!(f > Scalar(0))) throw std::invalid_argument("los_channel: frequency must be positive");
  const Scalar d = distance_to_rx(x, y, rx);
  const Scalar c = kSpeedOfLight<Scalar>;
  return std::polar(c / (kTwoPi<Scalar> * f * d), -kTwoPi<Scalar> * f * d / c);
}

/// Center-frequency focusing profile phi_std = 2 pi f_c l(x, y) / c.
template <typename Scalar>
PhaseProfile<Scalar> standard_phase_profile(const ArrayGeometry<Scalar>& g, const RxPlacement<Scalar>& rx,
                                            Scalar carrier) {
  const Scalar k = kTwoPi<Scalar> * carrier / kSpeedOfLight<Scalar>;
  PhaseProfile<Scalar> p;
  p.phases = wrap_phase<Scalar>(k * distance_to_rx(g, rx));
  return p;
}

namespace detail {

inline constexpr std::size_t kFreqBlock = 16;
inline constexpr std::size_t kLanes = 4;

template <typename Scalar>
bool uniformly_spaced(const ArrayX<Scalar>& f) {
  if (f.size() < 3) return true;
  const Scalar step = (f(f.size() - 1) - f(0)) / Scalar(f.size() - 1);
  for (Eigen::Index k = 1; k < f.size(); ++k)
    if (std::abs((f(k) - f(k - 1)) - step) > Scalar(1e-9) * std::abs(step)) return false;
  return true;
}

}  // namespace detail

/// g(f_k) = sum_n e^{j phi_n} / sqrt(N) * h_n(f_k) over every antenna.
///
/// Frequencies are processed in fixed blocks of 16; within a block the
/// per-antenna phasor e^{-j 2 pi f l / c} advances by a complex recurrence when
/// the grid is uniform. Antennas are accumulated in 4 interleaved lanes that
/// are reduced in a fixed order. Neither depends on `threads`, so results are
/// bitwise reproducible for any worker count.
template <typename Scalar>
EquivalentChannel<Scalar> equivalent_channel(const ArrayGeometry<Scalar>& g, const RxPlacement<Scalar>& rx,
                                             const PhaseProfile<Scalar>& profile, const ArrayX<Scalar>& freqs,
                                             std::size_t threads = 0) {
  using detail::kFreqBlock;
  using detail::kLanes;
  if (profile.size() != g.size())
    throw std::invalid_argument("equivalent_channel: profile length does not match the array");
  for (Eigen::Index k = 0; k < freqs.size(); ++k) {
    if (!(freqs(k) > Scalar(0))) throw std::invalid_argument("equivalent_channel: frequencies must be positive");
    if (k > 0 && !(freqs(k) > freqs(k - 1)))
      throw std::invalid_argument("equivalent_channel: frequencies must be strictly increasing");
  }

  const std::size_t n = g.size();
  const std::size_t padded = (n + kLanes - 1) / kLanes * kLanes;
  const ArrayX<Scalar> dist = distance_to_rx(g, rx);
  std::vector<Scalar> len(padded, Scalar(1)), amp_re(padded, Scalar(0)), amp_im(padded, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    len[i] = dist(e);
    amp_re[i] = std::cos(profile.phases(e)) / dist(e);
    amp_im[i] = std::sin(profile.phases(e)) / dist(e);
  }

  const std::size_t nf = static_cast<std::size_t>(freqs.size());
  const Scalar c = kSpeedOfLight<Scalar>;
  const bool uniform = detail::uniformly_spaced(freqs);
  const Scalar dk = nf > 1 ? kTwoPi<Scalar> * (freqs(1) - freqs(0)) / c : Scalar(0);
  std::vector<Scalar> step_re, step_im;
  if (uniform) {
    step_re.resize(padded);
    step_im.resize(padded);
    for (std::size_t i = 0; i < padded; ++i) {
      step_re[i] = std::cos(dk * len[i]);
      step_im[i] = -std::sin(dk * len[i]);
    }
  }

  EquivalentChannel<Scalar> out;
  out.freqs = freqs;
  out.gains.resize(freqs.size());
  const std::size_t blocks = (nf + kFreqBlock - 1) / kFreqBlock;

  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t k0 = b * kFreqBlock;
    const std::size_t kn = std::min(kFreqBlock, nf - k0);
    std::array<std::array<Scalar, kLanes>, kFreqBlock> acc_re{}, acc_im{};
    std::array<Scalar, kFreqBlock> wavenumber{};
    for (std::size_t k = 0; k < kn; ++k)
      wavenumber[k] = kTwoPi<Scalar> * freqs(static_cast<Eigen::Index>(k0 + k)) / c;

    for (std::size_t i0 = 0; i0 < padded; i0 += kLanes) {
      if (uniform) {
        std::array<Scalar, kLanes> zr, zi;
        for (std::size_t l = 0; l < kLanes; ++l) {
          const Scalar theta = wavenumber[0] * len[i0 + l];
          zr[l] = std::cos(theta);
          zi[l] = -std::sin(theta);
        }
        for (std::size_t k = 0; k < kn; ++k) {
          for (std::size_t l = 0; l < kLanes; ++l) {
            const Scalar ar = amp_re[i0 + l], ai = amp_im[i0 + l];
            acc_re[k][l] += ar * zr[l] - ai * zi[l];
            acc_im[k][l] += ar * zi[l] + ai * zr[l];
            const Scalar sr = step_re[i0 + l], si = step_im[i0 + l];
            const Scalar t = zr[l] * sr - zi[l] * si;
            zi[l] = zr[l] * si + zi[l] * sr;
            zr[l] = t;
          }
        }
      } else {
        for (std::size_t k = 0; k < kn; ++k) {
          for (std::size_t l = 0; l < kLanes; ++l) {
            const Scalar theta = wavenumber[k] * len[i0 + l];
            const Scalar zr = std::cos(theta), zi = -std::sin(theta);
            const Scalar ar = amp_re[i0 + l], ai = amp_im[i0 + l];
            acc_re[k][l] += ar * zr - ai * zi;
            acc_im[k][l] += ar * zi + ai * zr;
          }
        }
      }
    }

    const Scalar norm = Scalar(1) / std::sqrt(Scalar(g.normalization_count));
    for (std::size_t k = 0; k < kn; ++k) {
      Scalar re = 0, im = 0;
      for (std::size_t l = 0; l < kLanes; ++l) {
        re += acc_re[k][l];
        im += acc_im[k][l];
      }
      const Scalar scale = norm * c / (kTwoPi<Scalar> * freqs(static_cast<Eigen::Index>(k0 + k)));
      out.gains(static_cast<Eigen::Index>(k0 + k)) = std::complex<Scalar>(scale * re, scale * im);
    }
  });
  return out;
}

/// sqrt(l^2 + R^2) - l without cancellation.
template <typename Scalar>
Scalar aperture_path_spread(Scalar ell, Scalar radius) {
  return radius * radius / (std::sqrt(ell * ell + radius * radius) + ell);
}

/// The misfocus factor sinc(omega (d_avg - l)) of the boresight standard beam.
template <typename Scalar>
Scalar misfocus_sinc_factor(const RxPlacement<Scalar>& rx, Scalar radius, Scalar f, Scalar carrier) {
  const Scalar half_spread = aperture_path_spread(rx.ell, radius) / Scalar(2);
  return sinc(spatial_frequency(f, carrier) * half_spread);
}

/// Closed-form continuous-aperture response of the standard beam on boresight.
template <typename Scalar>
std::complex<Scalar> closed_form_standard(const RxPlacement<Scalar>& rx, Scalar radius, Scalar spacing, Scalar f,
                                          Scalar carrier) {
  if (std::abs(rx.gamma) >= kBoresightTolerance<Scalar>)
    throw std::invalid_argument("closed_form_standard: receiver must be on boresight");
  const Scalar c = kSpeedOfLight<Scalar>;
  const Scalar half_spread = aperture_path_spread(rx.ell, radius) / Scalar(2);  // d_avg - l
  const Scalar d_avg = rx.ell + half_spread;
  const Scalar omega = spatial_frequency(f, carrier);
  const Scalar magnitude = Scalar(2) * c * half_spread / (std::sqrt(kPi<Scalar>) * radius * f * spacing);
  return std::polar(magnitude * sinc(omega * half_spread), -omega * d_avg);
}

/// c / (sqrt(l^2 + R^2) - l); +inf for a zero aperture.
template <typename Scalar>
Scalar misfocus_bandwidth_bound(Scalar ell, Scalar radius) {
  if (!(ell > Scalar(0)) || radius < Scalar(0))
    throw std::invalid_argument("misfocus_bandwidth_bound: need l > 0 and R >= 0");
  if (radius == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
  return kSpeedOfLight<Scalar> * (std::sqrt(ell * ell + radius * radius) + ell) / (radius * radius);
}

/// Midpoint-rule evaluation of the continuous-aperture response
///   g_a(f) = 1 / (sqrt(pi R^2) spacing) * integral over the disc of h(x, y, f) e^{j phi(x, y)}
/// on a grid_n x grid_n mesh of the bounding square, masked to the disc.
template <typename Scalar, typename PhaseFn>
std::complex<Scalar> itx_quadrature_oracle(const RxPlacement<Scalar>& rx, Scalar radius, Scalar spacing,
                                           PhaseFn&& phase_fn, Scalar f, int grid_n, std::size_t threads = 0) {
  if (grid_n < 256) throw std::invalid_argument("itx_quadrature_oracle: grid_n must be >= 256");
  if (!(radius > Scalar(0))) return {Scalar(0), Scalar(0)};
  const Scalar c = kSpeedOfLight<Scalar>;
  const Scalar k = kTwoPi<Scalar> * f / c;
  const Scalar h = Scalar(2) * radius / Scalar(grid_n);
  const Scalar r2 = radius * radius;

  std::vector<std::complex<Scalar>> rows(static_cast<std::size_t>(grid_n));
  parallel_for(rows.size(), threads, [&](std::size_t j) {
    const Scalar y = -radius + (Scalar(j) + Scalar(0.5)) * h;
    Scalar re = 0, im = 0;
    for (int i = 0; i < grid_n; ++i) {
      const Scalar x = -radius + (Scalar(i) + Scalar(0.5)) * h;
      if (x * x + y * y > r2) continue;
      const Scalar d = distance_to_rx(x, y, rx);
      const Scalar theta = Scalar(phase_fn(x, y)) - k * d;
      re += std::cos(theta) / d;
      im += std::sin(theta) / d;
    }
    rows[j] = {re, im};
  });
  std::complex<Scalar> sum{};
  for (const auto& r : rows) sum += r;
  const Scalar scale = c / (kTwoPi<Scalar> * f) * h * h / (std::sqrt(kPi<Scalar> * r2) * spacing);
  return sum * scale;
}

}  // namespace infocus

#endif  // INFOCUS_CHANNEL_HPP

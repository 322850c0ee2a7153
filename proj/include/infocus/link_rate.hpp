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

#ifndef INFOCUS_LINK_RATE_HPP
#define INFOCUS_LINK_RATE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "infocus/channel.hpp"
#include "infocus/constants.hpp"
#include "infocus/geometry.hpp"

namespace infocus {

template <typename Scalar = double>
struct RateResult {
  Scalar rate_bps{};
  ArrayX<Scalar> allocation;  // eta_k, W
  Scalar water_level{};       // mu, W: eta_k = max(0, mu - 1 / snr_per_watt_k)
  ArrayX<Scalar> subband_freqs;
};

/// Quantum thermal noise PSD h f / (exp(h f / (k T)) - 1), in W/Hz.
template <typename Scalar>
Scalar noise_psd(Scalar f, Scalar temperature) {
  if (!(f > Scalar(0)) || !(temperature > Scalar(0)))
    throw std::invalid_argument("noise_psd: frequency and temperature must be positive");
  using K = PhysicalConstants<Scalar>;
  const Scalar quantum = K::planck * f;
  return quantum / std::expm1(quantum / (K::boltzmann * temperature));
}

/// N_sub equally spaced frequencies covering [f_c - B/2, f_c + B/2], both
/// edges included. A single sub-band sits at f_c.
template <typename Scalar>
ArrayX<Scalar> subband_frequencies(Scalar carrier, Scalar bandwidth, std::size_t n_sub) {
  if (n_sub < 1) throw std::invalid_argument("subband_frequencies: n_sub must be >= 1");
  if (n_sub == 1) return ArrayX<Scalar>::Constant(1, carrier);
  ArrayX<Scalar> f(static_cast<Eigen::Index>(n_sub));
  const Scalar lo = carrier - bandwidth / Scalar(2);
  const Scalar step = bandwidth / Scalar(n_sub - 1);
  for (Eigen::Index k = 0; k < f.size(); ++k) f(k) = lo + Scalar(k) * step;
  return f;
}

/// Per-watt SNR of each sub-band: N_sub |g_k|^2 / (n_k B).
template <typename Scalar>
ArrayX<Scalar> snr_per_watt(const ArrayX<Scalar>& gains, const ArrayX<Scalar>& noise, Scalar bandwidth,
                            std::size_t n_sub) {
  return Scalar(n_sub) * gains / (noise * bandwidth);
}

/// Rate-maximizing split of `total_power` over parallel sub-bands.
///
/// The water level mu solves sum_k max(0, mu - 1/snr_k) = total_power by
/// bisection; the allocation is then rescaled so it sums to total_power exactly.
template <typename Scalar>
RateResult<Scalar> waterfill(const ArrayX<Scalar>& gains, const ArrayX<Scalar>& noise, Scalar bandwidth,
                             std::size_t n_sub, Scalar total_power) {
  if (gains.size() != noise.size() || gains.size() != static_cast<Eigen::Index>(n_sub))
    throw std::invalid_argument("waterfill: gains, noise and n_sub must agree");
  if (!(total_power > Scalar(0)) || !(bandwidth > Scalar(0)))
    throw std::invalid_argument("waterfill: power and bandwidth must be positive");
  if ((gains < Scalar(0)).any() || !(noise > Scalar(0)).all())
    throw std::invalid_argument("waterfill: gains must be >= 0 and noise > 0");
  if (!(gains > Scalar(0)).any()) throw std::domain_error("waterfill: all sub-band gains are zero");

  const ArrayX<Scalar> snr = snr_per_watt(gains, noise, bandwidth, n_sub);
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  const ArrayX<Scalar> floor_level = snr.unaryExpr([inf](Scalar s) { return s > Scalar(0) ? Scalar(1) / s : inf; });

  auto filled = [&](Scalar mu) { return (mu - floor_level).max(Scalar(0)).sum(); };
  Scalar lo = 0;
  Scalar hi = floor_level.minCoeff() + total_power;
  for (int it = 0; it < 400 && (hi - lo) > Scalar(1e-12) * hi; ++it) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    (filled(mid) > total_power ? hi : lo) = mid;
  }

  RateResult<Scalar> r;
  r.water_level = Scalar(0.5) * (lo + hi);
  r.allocation = (r.water_level - floor_level).max(Scalar(0));
  const Scalar sum = r.allocation.sum();
  if (sum > Scalar(0)) {
    r.allocation *= total_power / sum;
  } else {
    Eigen::Index best;
    snr.maxCoeff(&best);
    r.allocation(best) = total_power;
  }
  return r;
}

/// (B / N_sub) sum_k log2(1 + eta_k snr_k).
template <typename Scalar>
Scalar rate_from_allocation(const ArrayX<Scalar>& allocation, const ArrayX<Scalar>& snr, Scalar bandwidth) {
  const Scalar per_band = bandwidth / Scalar(allocation.size());
  Scalar bits = 0;
  for (Eigen::Index k = 0; k < allocation.size(); ++k) bits += std::log1p(allocation(k) * snr(k));
  return per_band * bits / std::log(Scalar(2));
}

/// Water-filled achievable rate of a channel sampled on the scenario's
/// sub-band grid. An identically zero channel carries no data.
template <typename Scalar>
RateResult<Scalar> achievable_rate(const EquivalentChannel<Scalar>& channel, const Scenario<Scalar>& s) {
  if (channel.freqs.size() != static_cast<Eigen::Index>(s.n_sub))
    throw std::invalid_argument("achievable_rate: channel must be sampled on the N_sub sub-band frequencies");
  const ArrayX<Scalar> gains = channel.power();
  const ArrayX<Scalar> noise = channel.freqs.unaryExpr([&](Scalar f) { return noise_psd(f, s.temperature); });

  if (!(gains > Scalar(0)).any()) {
    RateResult<Scalar> zero;
    zero.allocation = ArrayX<Scalar>::Constant(gains.size(), s.tx_power / Scalar(s.n_sub));
    zero.subband_freqs = channel.freqs;
    return zero;
  }
  RateResult<Scalar> r = waterfill(gains, noise, s.bandwidth, s.n_sub, s.tx_power);
  r.rate_bps = rate_from_allocation(r.allocation, snr_per_watt(gains, noise, s.bandwidth, s.n_sub), s.bandwidth);
  r.subband_freqs = channel.freqs;
  return r;
}

/// Radially thinned sub-array: elements with x^2 + y^2 <= delta R^2 stay on.
/// The weight normalization keeps the full array's count, so each active
/// element still radiates 1/N of the full-array power.
template <typename Scalar>
ArrayGeometry<Scalar> thin_array(const ArrayGeometry<Scalar>& g, Scalar delta) {
  if (!(delta > Scalar(0)) || delta > Scalar(1)) throw std::invalid_argument("thin_array: delta must be in (0, 1]");
  const Scalar r2 = delta * g.radius * g.radius;
  const ArrayX<Scalar> rho2 = g.x().square() + g.y().square();
  const Eigen::Index active = (delta == Scalar(1)) ? rho2.size() : (rho2 <= r2).count();
  if (active == 0) throw std::domain_error("thin_array: no antenna survives thinning");

  ArrayGeometry<Scalar> out;
  out.radius = g.radius * std::sqrt(delta);
  out.spacing = g.spacing;
  out.normalization_count = g.normalization_count;
  if (delta == Scalar(1)) {
    out.radius = g.radius;
    out.coords = g.coords;
    return out;
  }
  out.coords.resize(active, 2);
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < rho2.size(); ++i)
    if (rho2(i) <= r2) out.coords.row(row++) = g.coords.row(i);
  return out;
}

}  // namespace infocus

#endif  // INFOCUS_LINK_RATE_HPP

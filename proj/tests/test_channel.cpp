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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "infocus/channel.hpp"
#include "oracles.hpp"

using namespace infocus;

namespace {

struct Fixture {
  ArrayGeometry<double> g = build_array(4e-3, 0.5e-3);
  std::vector<double> xs, ys;
  Fixture() {
    for (std::size_t n = 0; n < g.size(); ++n) {
      xs.push_back(g.coords(n, 0));
      ys.push_back(g.coords(n, 1));
    }
  }
};

std::vector<double> to_vector(const ArrayX<double>& a) { return {a.data(), a.data() + a.size()}; }

PhaseProfile<double> random_profile(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2 * oracle::pi);
  PhaseProfile<double> p;
  p.phases.resize(static_cast<Eigen::Index>(n));
  for (auto& v : p.phases) v = u(rng);
  return p;
}

}  // namespace

TEST_CASE("phase wrapping lands in [0, 2 pi)") {
  for (double p : {-13.0, -2 * oracle::pi, -1e-18, 0.0, 1.0, 2 * oracle::pi, 40.0, 1e6}) {
    const double w = wrap_phase(p);
    CAPTURE(p);
    CHECK(w >= 0.0);
    CHECK(w < 2 * oracle::pi);
    CHECK(std::remainder(w - p, 2 * oracle::pi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  }
}

TEST_CASE("sinc and spatial frequency") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-8) == doctest::Approx(1.0));
  CHECK(sinc(oracle::pi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(sinc(1.0) == doctest::Approx(std::sin(1.0)));
  CHECK(std::abs(sinc(2e-6) - std::sin(2e-6) / 2e-6) < 1e-15);
  CHECK(spatial_frequency(310e9, 300e9) == doctest::Approx(2 * oracle::pi * 10e9 / oracle::c));
}

TEST_CASE("LoS gain matches the free-space expression") {
  const RxPlacement<double> rx(0.2, deg_to_rad(-25.0));
  for (double f : {100e9, 300e9, 333.3e9}) {
    const double d = oracle::distance(0.01, -0.02, 0.2, rx.gamma);
    const std::complex<double> ref =
        oracle::c / (2 * oracle::pi * f * d) * std::exp(std::complex<double>(0, -2 * oracle::pi * f * d / oracle::c));
    CHECK(std::abs(los_channel(0.01, -0.02, rx, f) - ref) < 1e-12 * std::abs(ref));
  }
}

TEST_CASE("standard profile equals folded 2 pi f_c l / c") {
  Fixture fx;
  const RxPlacement<double> rx(0.15, deg_to_rad(10.0));
  const auto p = standard_phase_profile(fx.g, rx, 300e9);
  for (std::size_t n = 0; n < fx.g.size(); n += 11) {
    const double ref = 2 * oracle::pi * 300e9 * oracle::distance(fx.xs[n], fx.ys[n], 0.15, rx.gamma) / oracle::c;
    CHECK(std::remainder(p.phases(n) - ref, 2 * oracle::pi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  }
  // At l = 150 lambda the centre element accumulates a whole number of cycles.
  const double fc = oracle::c / (0.15 / 150.0);
  const auto g1 = build_array(1e-3, 0.5e-3);
  const auto p1 = standard_phase_profile(g1, RxPlacement<double>(0.15, 0.0), fc);
  const double centre = p1.phases(6);
  CHECK(std::min(centre, 2 * oracle::pi - centre) < 1e-6);
}

TEST_CASE("equivalent channel matches the direct sum") {
  Fixture fx;
  const RxPlacement<double> rx(0.12, deg_to_rad(20.0));
  const auto prof = random_profile(fx.g.size(), 7);
  const auto phases = to_vector(prof.phases);

  SUBCASE("uniform grid") {
    ArrayX<double> f = ArrayX<double>::LinSpaced(37, 280e9, 320e9);
    const auto ch = equivalent_channel(fx.g, rx, prof, f, 1);
    for (Eigen::Index k = 0; k < f.size(); ++k) {
      const auto ref = oracle::channel(fx.xs, fx.ys, phases, 0.12, rx.gamma, f(k), fx.g.size());
      CHECK(std::abs(ch.gains(k) - ref) < 1e-9 * std::abs(ref) + 1e-15);
    }
  }
  SUBCASE("non-uniform grid falls back to direct evaluation") {
    ArrayX<double> f(5);
    f << 250e9, 251e9, 290e9, 300e9, 350e9;
    CHECK_FALSE(detail::uniformly_spaced(f));
    const auto ch = equivalent_channel(fx.g, rx, prof, f, 2);
    for (Eigen::Index k = 0; k < f.size(); ++k) {
      const auto ref = oracle::channel(fx.xs, fx.ys, phases, 0.12, rx.gamma, f(k), fx.g.size());
      CHECK(std::abs(ch.gains(k) - ref) < 1e-12 * std::abs(ref) + 1e-15);
    }
  }
}

TEST_CASE("equivalent channel is bitwise identical across thread counts") {
  const auto g = build_array(1.2e-2, 0.5e-3);
  const RxPlacement<double> rx(0.15, deg_to_rad(-40.0));
  const auto prof = standard_phase_profile(g, rx, 300e9);
  const ArrayX<double> f = ArrayX<double>::LinSpaced(53, 280e9, 320e9);
  const auto ref = equivalent_channel(g, rx, prof, f, 1);
  for (std::size_t t : {2u, 3u, 8u}) {
    const auto other = equivalent_channel(g, rx, prof, f, t);
    CAPTURE(t);
    CHECK((other.gains == ref.gains).all());
  }
}

TEST_CASE("standard beam sums coherently at the carrier") {
  Fixture fx;
  const RxPlacement<double> rx(0.1, deg_to_rad(35.0));
  const auto prof = standard_phase_profile(fx.g, rx, 300e9);
  ArrayX<double> fc = ArrayX<double>::Constant(1, 300e9);
  const double coherent = std::abs(equivalent_channel(fx.g, rx, prof, fc).gains(0));

  double amp_sum = 0;
  for (std::size_t n = 0; n < fx.g.size(); ++n)
    amp_sum += oracle::c / (2 * oracle::pi * 300e9 * oracle::distance(fx.xs[n], fx.ys[n], 0.1, rx.gamma));
  CHECK(coherent == doctest::Approx(amp_sum / std::sqrt(double(fx.g.size()))).epsilon(1e-9));

  for (unsigned seed = 1; seed <= 20; ++seed) {
    auto perturbed = prof;
    perturbed.phases += 0.3 * random_profile(fx.g.size(), seed).phases;
    CHECK(std::abs(equivalent_channel(fx.g, rx, perturbed, fc).gains(0)) <= coherent);
  }
}

TEST_CASE("a common phase offset leaves the gain magnitude unchanged") {
  Fixture fx;
  const RxPlacement<double> rx(0.15, 0.0);
  const auto prof = random_profile(fx.g.size(), 3);
  auto shifted = prof;
  shifted.phases = shifted.phases + 1.234;
  const ArrayX<double> f = ArrayX<double>::LinSpaced(9, 290e9, 310e9);
  const auto a = equivalent_channel(fx.g, rx, prof, f);
  const auto b = equivalent_channel(fx.g, rx, shifted, f);
  for (Eigen::Index k = 0; k < f.size(); ++k) CHECK(std::abs(b.gains(k)) == doctest::Approx(std::abs(a.gains(k))));
}

TEST_CASE("discrete sum follows the continuous closed form on boresight") {
  const double f_c = 300e9, R = 2e-2, spacing = half_wavelength(f_c);
  const auto g = build_array(R, spacing);
  const RxPlacement<double> rx(0.05, 0.0);
  const auto prof = standard_phase_profile(g, rx, f_c);
  const ArrayX<double> f = ArrayX<double>::LinSpaced(41, 200e9, 400e9);
  const auto ch = equivalent_channel(g, rx, prof, f);
  const double scale = std::sqrt(double(g.size())) * spacing / (std::sqrt(oracle::pi) * R);
  const double peak = std::abs(closed_form_standard(rx, R, spacing, f_c, f_c));
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    const auto cf = closed_form_standard(rx, R, spacing, f(k), f_c);
    CAPTURE(f(k));
    CHECK(std::abs(ch.gains(k) * scale - cf) <= 0.02 * peak);
  }
}

TEST_CASE("closed form agrees with quadrature") {
  const double f_c = 300e9, R = 1e-2, spacing = half_wavelength(f_c);
  const RxPlacement<double> rx(0.04, 0.0);
  auto std_phase = [&](double x, double y) { return 2 * oracle::pi * f_c * distance_to_rx(x, y, rx) / oracle::c; };
  const double peak = std::abs(closed_form_standard(rx, R, spacing, f_c, f_c));
  for (double f : {270e9, 300e9, 340e9}) {
    const auto quad = itx_quadrature_oracle(rx, R, spacing, std_phase, f, 1024, 1);
    CHECK(std::abs(quad - closed_form_standard(rx, R, spacing, f, f_c)) < 5e-3 * peak);
  }
  CHECK(itx_quadrature_oracle(rx, 0.0, spacing, std_phase, f_c, 256) == std::complex<double>(0, 0));
  CHECK_THROWS_AS(itx_quadrature_oracle(rx, R, spacing, std_phase, f_c, 64), std::invalid_argument);
}

TEST_CASE("misfocus bound and closed-form preconditions") {
  CHECK(misfocus_bandwidth_bound(0.15, 0.1) == doctest::Approx(oracle::c / (std::sqrt(0.0325) - 0.15)));
  CHECK(std::isinf(misfocus_bandwidth_bound(0.15, 0.0)));
  CHECK(aperture_path_spread(1.0, 1e-6) == doctest::Approx(0.5e-12).epsilon(1e-9));
  CHECK_THROWS_AS(closed_form_standard(RxPlacement<double>(0.15, 0.1), 0.1, 5e-4, 3e11, 3e11), std::invalid_argument);
}

TEST_CASE("equivalent channel input checks") {
  Fixture fx;
  const RxPlacement<double> rx(0.15, 0.0);
  PhaseProfile<double> wrong;
  wrong.phases = ArrayX<double>::Zero(3);
  ArrayX<double> f = ArrayX<double>::Constant(1, 3e11);
  CHECK_THROWS_AS(equivalent_channel(fx.g, rx, wrong, f), std::invalid_argument);
  const auto prof = standard_phase_profile(fx.g, rx, 3e11);
  ArrayX<double> bad(2);
  bad << 3e11, 2e11;
  CHECK_THROWS_AS(equivalent_channel(fx.g, rx, prof, bad), std::invalid_argument);
  bad << -1.0, 2e11;
  CHECK_THROWS_AS(equivalent_channel(fx.g, rx, prof, bad), std::invalid_argument);
}

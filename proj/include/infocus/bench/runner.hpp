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

#ifndef INFOCUS_BENCH_RUNNER_HPP
#define INFOCUS_BENCH_RUNNER_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "infocus/bench/config.hpp"
#include "infocus/beam_design.hpp"
#include "infocus/channel.hpp"
#include "infocus/geometry.hpp"
#include "infocus/link_rate.hpp"

namespace infocus::bench {

/// Scenario for a config. The array build is the expensive part, so callers
/// that sweep reuse the geometry through `scenario_for`.
Scenario<double> make_scenario(const RunConfig& cfg);
Scenario<double> scenario_for(const RunConfig& cfg, const ArrayGeometry<double>& geometry);

struct BeamEvaluation {
  BeamSpec beam;
  ArrayGeometry<double> geometry;  // active elements
  PhaseProfile<double> profile;    // applied (quantized when q is set)
  PlacementClass placement{PlacementClass::Boresight};
  double dispersion_factor{};
  EquivalentChannel<double> subbands;
  RateResult<double> rate;
};

BeamEvaluation evaluate_beam(const Scenario<double>& s, const BeamSpec& beam, std::size_t threads = 0);

struct SweepRecord {
  std::string variable;
  double value{};
  std::string beam;
  double rate_bps{};
  double gain_min_db{};
  double gain_max_db{};
  double gain_mean_db{};  // 10 log10 of the mean sub-band power
  std::size_t n_tx{};
  PlacementClass placement{PlacementClass::Boresight};
  double dispersion_factor{};
};

SweepRecord summarize(const BeamEvaluation& e, SweepVariable variable, double value);

struct DesignOutputs {
  std::vector<std::filesystem::path> files;
  std::vector<SweepRecord> records;
};

/// Writes, per beam, profile_<beam>.csv (x_m, y_m, phase_rad), plus
/// response.csv (f_Hz, gain_db, beam) on the dense response grid and
/// summary.csv with one record per beam.
DesignOutputs run_design(const RunConfig& cfg, const std::filesystem::path& out_dir, std::size_t threads = 0);

/// Evaluates every sweep point for every beam and writes sweep.csv in sweep
/// order. An empty sweep yields a single point at the configured scenario.
std::vector<SweepRecord> run_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                   std::size_t threads = 0);

/// Config with one sweep variable set to `value`.
RunConfig apply_sweep_value(RunConfig cfg, SweepVariable variable, double value);

std::string file_safe_name(const BeamSpec& beam);

}  // namespace infocus::bench

#endif  // INFOCUS_BENCH_RUNNER_HPP

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

#ifndef INFOCUS_BENCH_CONFIG_HPP
#define INFOCUS_BENCH_CONFIG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace infocus::bench {

enum class BeamKind { Standard, InFocus, ThinnedStandard };

struct BeamSpec {
  BeamKind kind{BeamKind::Standard};
  double delta{1.0};  // active fraction, thinned-standard only

  std::string name() const;
  bool operator==(const BeamSpec&) const = default;
};

/// Parses "standard", "infocus" or "thinned-standard(<delta>)".
std::optional<BeamSpec> parse_beam(std::string_view token);

enum class SweepVariable { None, Distance, Angle, Bandwidth, Quantizer, Thinning };

const char* to_string(SweepVariable v);

struct SweepSpec {
  SweepVariable variable{SweepVariable::None};
  double start{};
  double stop{};
  std::size_t steps{1};

  /// Evenly spaced points from start to stop inclusive; quantizer values are
  /// rounded to integers.
  std::vector<double> values() const;
};

/// Default range for a sweep variable (distance in m, angle in degrees,
/// bandwidth in Hz, quantizer in bits, thinning as active fraction).
SweepSpec default_sweep(SweepVariable v);

/// Fully resolved run configuration. Angles are degrees here and nowhere else.
struct RunConfig {
  double radius{0.1};
  std::optional<double> spacing;  // nullopt: half a carrier wavelength
  double carrier{300e9};
  double bandwidth{40e9};
  double distance{0.15};
  double angle_deg{0.0};
  std::optional<int> q_bits{2};  // nullopt: continuous phases
  std::size_t n_sub{512};
  double tx_power{1e-3};
  double temperature{290.0};
  std::vector<BeamSpec> beams{{BeamKind::Standard, 1.0}, {BeamKind::InFocus, 1.0}};
  SweepSpec sweep;
  std::size_t response_points{801};
  std::optional<double> response_start;  // default f_c - B (f_c - B/2 when B >= f_c)
  std::optional<double> response_stop;   // default f_c + B

  double resolved_spacing() const;
  double resolved_response_start() const;
  double resolved_response_stop() const;

  /// key = value lines of the resolved configuration, in a fixed order.
  std::vector<std::pair<std::string, std::string>> resolved_entries() const;
};

struct Diagnostic {
  std::size_t line{};  // 0 when the problem is not tied to one line
  std::string key;
  std::string message;

  std::string to_string() const;
};

struct ValidationResult {
  std::optional<RunConfig> config;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return config.has_value(); }
};

/// Parses a flat `key = value` document (`#` starts a comment) and checks
/// every scenario invariant. Unknown keys and bad values are reported, never
/// silently dropped.
ValidationResult validate_config(std::string_view document);

/// Re-checks a programmatically built config.
std::vector<Diagnostic> check_config(const RunConfig& cfg);

/// Formats a double as %.9e.
std::string format_number(double v);

}  // namespace infocus::bench

#endif  // INFOCUS_BENCH_CONFIG_HPP

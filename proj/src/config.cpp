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

#include "infocus/bench/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace infocus::bench {

namespace {

constexpr double kSpeedOfLight = 2.9979e8;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long> parse_integer(std::string_view s) {
  s = trim(s);
  long v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Shortest representation that reads back to the same double.
std::string format_shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view s) {
  static const std::map<std::string_view, SweepVariable> names{
      {"none", SweepVariable::None},           {"distance", SweepVariable::Distance},
      {"angle", SweepVariable::Angle},         {"bandwidth", SweepVariable::Bandwidth},
      {"quantizer", SweepVariable::Quantizer}, {"thinning", SweepVariable::Thinning}};
  const auto it = names.find(trim(s));
  if (it == names.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

std::string BeamSpec::name() const {
  switch (kind) {
    case BeamKind::Standard: return "standard";
    case BeamKind::InFocus: return "infocus";
    case BeamKind::ThinnedStandard: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "thinned-standard(%g)", delta);
      return buf;
    }
  }
  return "unknown";
}

std::optional<BeamSpec> parse_beam(std::string_view token) {
  token = trim(token);
  if (token == "standard") return BeamSpec{BeamKind::Standard, 1.0};
  if (token == "infocus") return BeamSpec{BeamKind::InFocus, 1.0};
  constexpr std::string_view prefix = "thinned-standard(";
  if (token.starts_with(prefix) && token.ends_with(")")) {
    const auto inner = token.substr(prefix.size(), token.size() - prefix.size() - 1);
    const auto delta = parse_double(inner);
    if (!delta || !(*delta > 0.0) || *delta > 1.0) return std::nullopt;
    return BeamSpec{BeamKind::ThinnedStandard, *delta};
  }
  return std::nullopt;
}

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::None: return "none";
    case SweepVariable::Distance: return "distance";
    case SweepVariable::Angle: return "angle";
    case SweepVariable::Bandwidth: return "bandwidth";
    case SweepVariable::Quantizer: return "quantizer";
    case SweepVariable::Thinning: return "thinning";
  }
  return "unknown";
}

std::vector<double> SweepSpec::values() const {
  if (variable == SweepVariable::None || steps == 0) return {};
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = steps == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    if (variable == SweepVariable::Quantizer) out[i] = std::round(out[i]);
  }
  if (steps > 1 && variable != SweepVariable::Quantizer) out.back() = stop;
  return out;
}

SweepSpec default_sweep(SweepVariable v) {
  switch (v) {
    case SweepVariable::None: return {v, 0.0, 0.0, 1};
    case SweepVariable::Distance: return {v, 0.05, 0.60, 12};
    case SweepVariable::Angle: return {v, -75.0, 75.0, 31};
    case SweepVariable::Bandwidth: return {v, 5e9, 40e9, 8};
    case SweepVariable::Quantizer: return {v, 1.0, 6.0, 6};
    case SweepVariable::Thinning: return {v, 0.1, 1.0, 10};
  }
  return {};
}

double RunConfig::resolved_spacing() const { return spacing ? *spacing : kSpeedOfLight / (2.0 * carrier); }
double RunConfig::resolved_response_start() const {
  if (response_start) return *response_start;
  return bandwidth < carrier ? carrier - bandwidth : carrier - bandwidth / 2.0;
}
double RunConfig::resolved_response_stop() const { return response_stop ? *response_stop : carrier + bandwidth; }

std::vector<std::pair<std::string, std::string>> RunConfig::resolved_entries() const {
  std::string beam_list;
  for (const auto& b : beams) beam_list += (beam_list.empty() ? "" : ",") + b.name();
  return {
      {"R", format_shortest(radius)},
      {"delta", format_shortest(resolved_spacing())},
      {"f_c", format_shortest(carrier)},
      {"B", format_shortest(bandwidth)},
      {"ell", format_shortest(distance)},
      {"gamma", format_shortest(angle_deg)},
      {"q", q_bits ? std::to_string(*q_bits) : std::string("none")},
      {"N_sub", std::to_string(n_sub)},
      {"eta", format_shortest(tx_power)},
      {"T", format_shortest(temperature)},
      {"beams", beam_list},
      {"sweep", to_string(sweep.variable)},
      {"sweep_start", format_shortest(sweep.start)},
      {"sweep_stop", format_shortest(sweep.stop)},
      {"sweep_steps", std::to_string(sweep.steps)},
      {"response_points", std::to_string(response_points)},
      {"response_start", format_shortest(resolved_response_start())},
      {"response_stop", format_shortest(resolved_response_stop())},
  };
}

std::string Diagnostic::to_string() const {
  std::ostringstream os;
  if (line) os << "line " << line << ": ";
  if (!key.empty()) os << key << ": ";
  os << message;
  return os.str();
}

std::vector<Diagnostic> check_config(const RunConfig& c) {
  std::vector<Diagnostic> d;
  auto fail = [&](std::string key, std::string msg) { d.push_back({0, std::move(key), std::move(msg)}); };
  if (!(c.radius > 0.0)) fail("R", "array radius must be positive");
  if (c.spacing && !(*c.spacing > 0.0)) fail("delta", "element spacing must be positive");
  if (!(c.carrier > 0.0)) fail("f_c", "carrier frequency must be positive");
  if (!(c.bandwidth > 0.0)) fail("B", "bandwidth must be positive");
  else if (!(c.bandwidth < 2.0 * c.carrier)) fail("B", "bandwidth must be below 2 f_c (baseband violation)");
  if (!(c.distance > 0.0)) fail("ell", "receiver distance must be positive");
  if (!(std::abs(c.angle_deg) < 90.0)) fail("gamma", "receiver angle must lie strictly inside (-90, 90) degrees");
  if (c.q_bits && (*c.q_bits < 1 || *c.q_bits > 16)) fail("q", "quantizer resolution must be in [1, 16] bits or 'none'");
  if (c.n_sub < 1) fail("N_sub", "sub-band count must be >= 1");
  if (!(c.tx_power > 0.0)) fail("eta", "transmit power must be positive");
  if (!(c.temperature > 0.0)) fail("T", "temperature must be positive");
  if (c.beams.empty()) fail("beams", "at least one beam is required");
  for (const auto& b : c.beams)
    if (b.kind == BeamKind::ThinnedStandard && (!(b.delta > 0.0) || b.delta > 1.0))
      fail("beams", "thinning fraction must be in (0, 1]");
  if (c.response_points < 2) fail("response_points", "response grid needs at least 2 points");
  const bool response_ok = c.resolved_response_start() > 0.0 && c.resolved_response_stop() > c.resolved_response_start();
  if (c.bandwidth < 2.0 * c.carrier && !response_ok)
    fail("response_start", "response grid must satisfy 0 < start < stop");

  if (c.sweep.variable != SweepVariable::None) {
    if (c.sweep.steps < 1) fail("sweep_steps", "sweep range must be non-empty");
    for (double v : c.sweep.values()) {
      bool ok = true;
      switch (c.sweep.variable) {
        case SweepVariable::Distance: ok = v > 0.0; break;
        case SweepVariable::Angle: ok = std::abs(v) < 90.0; break;
        case SweepVariable::Bandwidth: ok = v > 0.0 && v < 2.0 * c.carrier; break;
        case SweepVariable::Quantizer: ok = v >= 1.0 && v <= 16.0; break;
        case SweepVariable::Thinning: ok = v > 0.0 && v <= 1.0; break;
        case SweepVariable::None: break;
      }
      if (!ok) {
        fail("sweep_start", std::string("sweep value ") + format_shortest(v) + " is invalid for '" +
                                to_string(c.sweep.variable) + "'");
        break;
      }
    }
  }
  return d;
}

ValidationResult validate_config(std::string_view document) {
  ValidationResult result;
  RunConfig cfg;
  std::map<std::string, std::size_t> seen;
  std::optional<double> sweep_start, sweep_stop;
  std::optional<long> sweep_steps;
  auto& diags = result.diagnostics;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    const auto eol = document.find('\n', pos);
    std::string_view line = document.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? document.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      diags.push_back({line_no, "", "expected 'key = value'"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    auto bad = [&](std::string msg) { diags.push_back({line_no, key, std::move(msg)}); };
    if (key.empty()) {
      bad("missing key");
      continue;
    }
    if (auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
      bad("duplicate key (first set on line " + std::to_string(it->second) + ")");
      continue;
    }

    auto number = [&](double& field) {
      if (auto v = parse_double(value)) field = *v;
      else bad("expected a number, got '" + std::string(value) + "'");
    };
    auto count = [&](std::size_t& field) {
      auto v = parse_integer(value);
      if (v && *v >= 0) field = static_cast<std::size_t>(*v);
      else bad("expected a non-negative integer, got '" + std::string(value) + "'");
    };

    if (key == "R") number(cfg.radius);
    else if (key == "delta") {
      if (value == "half-wavelength") cfg.spacing.reset();
      else if (auto v = parse_double(value)) cfg.spacing = *v;
      else bad("expected a number or 'half-wavelength'");
    } else if (key == "f_c") number(cfg.carrier);
    else if (key == "B") number(cfg.bandwidth);
    else if (key == "ell") number(cfg.distance);
    else if (key == "gamma") number(cfg.angle_deg);
    else if (key == "q") {
      if (value == "none") cfg.q_bits.reset();
      else if (auto v = parse_integer(value)) cfg.q_bits = static_cast<int>(*v);
      else bad("expected an integer or 'none'");
    } else if (key == "N_sub") count(cfg.n_sub);
    else if (key == "eta") number(cfg.tx_power);
    else if (key == "T") number(cfg.temperature);
    else if (key == "beams") {
      cfg.beams.clear();
      std::string_view rest = value;
      bool ok = true;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto token = trim(rest.substr(0, comma));
        if (auto b = parse_beam(token)) cfg.beams.push_back(*b);
        else {
          bad("unknown beam '" + std::string(token) + "'");
          ok = false;
          break;
        }
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
      if (ok && cfg.beams.empty()) bad("at least one beam is required");
    } else if (key == "sweep") {
      if (auto v = parse_sweep_variable(value)) cfg.sweep.variable = *v;
      else bad("expected one of none, distance, angle, bandwidth, quantizer, thinning");
    } else if (key == "sweep_start") {
      if (auto v = parse_double(value)) sweep_start = *v;
      else bad("expected a number");
    } else if (key == "sweep_stop") {
      if (auto v = parse_double(value)) sweep_stop = *v;
      else bad("expected a number");
    } else if (key == "sweep_steps") {
      if (auto v = parse_integer(value)) sweep_steps = *v;
      else bad("expected an integer");
    } else if (key == "response_points") count(cfg.response_points);
    else if (key == "response_start") {
      if (auto v = parse_double(value)) cfg.response_start = *v;
      else bad("expected a number");
    } else if (key == "response_stop") {
      if (auto v = parse_double(value)) cfg.response_stop = *v;
      else bad("expected a number");
    } else {
      bad("unknown key");
    }
  }

  const SweepSpec defaults = default_sweep(cfg.sweep.variable);
  cfg.sweep.start = sweep_start.value_or(defaults.start);
  cfg.sweep.stop = sweep_stop.value_or(defaults.stop);
  if (sweep_steps && *sweep_steps < 1) {
    diags.push_back({seen["sweep_steps"], "sweep_steps", "sweep range must be non-empty"});
  } else {
    cfg.sweep.steps = sweep_steps ? static_cast<std::size_t>(*sweep_steps) : defaults.steps;
  }

  for (auto d : check_config(cfg)) {
    if (auto it = seen.find(d.key); it != seen.end()) d.line = it->second;
    diags.push_back(std::move(d));
  }
  if (diags.empty()) result.config = std::move(cfg);
  return result;
}

}  // namespace infocus::bench

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

#include "infocus/bench/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "infocus/constants.hpp"
#include "infocus/parallel.hpp"

namespace infocus::bench {

namespace {

void write_header(std::ostream& os, const RunConfig& cfg) {
  for (const auto& [key, value] : cfg.resolved_entries()) os << "# " << key << " = " << value << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return os;
}

void close_output(std::ofstream& os, const std::filesystem::path& path) {
  os.close();
  if (!os) throw std::runtime_error("error while writing '" + path.string() + "'");
}

void write_records(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "variable,value,beam,rate_bps,gain_min_db,gain_max_db,gain_mean_db,n_tx,placement,dispersion_factor\n";
  for (const auto& r : records) {
    os << r.variable << ',' << format_number(r.value) << ',' << r.beam << ',' << format_number(r.rate_bps) << ','
       << format_number(r.gain_min_db) << ',' << format_number(r.gain_max_db) << ','
       << format_number(r.gain_mean_db) << ',' << r.n_tx << ',' << to_string(r.placement) << ','
       << format_number(r.dispersion_factor) << '\n';
  }
}

}  // namespace

Scenario<double> scenario_for(const RunConfig& cfg, const ArrayGeometry<double>& geometry) {
  Scenario<double> s;
  s.geometry = geometry;
  s.rx = RxPlacement<double>(cfg.distance, deg_to_rad(cfg.angle_deg));
  s.carrier = cfg.carrier;
  s.bandwidth = cfg.bandwidth;
  s.q_bits = cfg.q_bits;
  s.n_sub = cfg.n_sub;
  s.tx_power = cfg.tx_power;
  s.temperature = cfg.temperature;
  validate(s);
  return s;
}

Scenario<double> make_scenario(const RunConfig& cfg) {
  return scenario_for(cfg, build_array(cfg.radius, cfg.resolved_spacing()));
}

BeamEvaluation evaluate_beam(const Scenario<double>& s, const BeamSpec& beam, std::size_t threads) {
  BeamEvaluation e;
  e.beam = beam;
  switch (beam.kind) {
    case BeamKind::Standard:
      e.geometry = s.geometry;
      e.profile = standard_phase_profile(e.geometry, s.rx, s.carrier);
      e.placement = rx_projection_class(s.geometry, s.rx).placement_class;
      break;
    case BeamKind::InFocus: {
      DesignedBeam<double> d = design_infocus_beam(s);
      e.geometry = s.geometry;
      e.profile = std::move(d.profile);
      e.placement = d.placement_class;
      e.dispersion_factor = d.dispersion_factor;
      break;
    }
    case BeamKind::ThinnedStandard:
      e.geometry = thin_array(s.geometry, beam.delta);
      e.profile = standard_phase_profile(e.geometry, s.rx, s.carrier);
      e.placement = rx_projection_class(s.geometry, s.rx).placement_class;
      break;
  }
  if (s.q_bits) e.profile = quantize_profile(e.profile, *s.q_bits);

  const ArrayX<double> freqs = subband_frequencies(s.carrier, s.bandwidth, s.n_sub);
  e.subbands = equivalent_channel(e.geometry, s.rx, e.profile, freqs, threads);
  e.rate = achievable_rate(e.subbands, s);
  return e;
}

SweepRecord summarize(const BeamEvaluation& e, SweepVariable variable, double value) {
  SweepRecord r;
  r.variable = to_string(variable);
  r.value = value;
  r.beam = e.beam.name();
  r.rate_bps = e.rate.rate_bps;
  const ArrayX<double> power = e.subbands.power();
  const ArrayX<double> db = e.subbands.gain_db();
  r.gain_min_db = db.minCoeff();
  r.gain_max_db = db.maxCoeff();
  r.gain_mean_db = 10.0 * std::log10(power.mean());
  r.n_tx = e.geometry.size();
  r.placement = e.placement;
  r.dispersion_factor = e.dispersion_factor;
  return r;
}

std::string file_safe_name(const BeamSpec& beam) {
  std::string name = beam.name();
  std::string out;
  for (char ch : name) {
    if (ch == '(') out += '_';
    else if (ch == ')') continue;
    else out += ch;
  }
  return out;
}

RunConfig apply_sweep_value(RunConfig cfg, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::None: break;
    case SweepVariable::Distance: cfg.distance = value; break;
    case SweepVariable::Angle: cfg.angle_deg = value; break;
    case SweepVariable::Bandwidth: cfg.bandwidth = value; break;
    case SweepVariable::Quantizer: cfg.q_bits = static_cast<int>(std::lround(value)); break;
    case SweepVariable::Thinning:
      for (auto& b : cfg.beams)
        if (b.kind == BeamKind::ThinnedStandard) b.delta = value;
      break;
  }
  return cfg;
}

DesignOutputs run_design(const RunConfig& cfg, const std::filesystem::path& out_dir, std::size_t threads) {
  if (auto d = check_config(cfg); !d.empty()) throw std::invalid_argument("invalid configuration: " + d.front().to_string());
  std::filesystem::create_directories(out_dir);
  const Scenario<double> s = make_scenario(cfg);

  const std::size_t n_resp = cfg.response_points;
  ArrayX<double> resp_freqs(static_cast<Eigen::Index>(n_resp));
  const double f0 = cfg.resolved_response_start();
  const double f1 = cfg.resolved_response_stop();
  for (std::size_t k = 0; k < n_resp; ++k)
    resp_freqs[static_cast<Eigen::Index>(k)] = f0 + (f1 - f0) * static_cast<double>(k) / static_cast<double>(n_resp - 1);
  resp_freqs[resp_freqs.size() - 1] = f1;

  DesignOutputs out;
  std::vector<std::pair<std::string, EquivalentChannel<double>>> responses;
  for (const auto& beam : cfg.beams) {
    const BeamEvaluation e = evaluate_beam(s, beam, threads);
    out.records.push_back(summarize(e, SweepVariable::None, 0.0));
    responses.emplace_back(beam.name(), equivalent_channel(e.geometry, s.rx, e.profile, resp_freqs, threads));

    const auto path = out_dir / ("profile_" + file_safe_name(beam) + ".csv");
    auto os = open_output(path);
    write_header(os, cfg);
    os << "x_m,y_m,phase_rad\n";
    for (Eigen::Index i = 0; i < e.profile.phases.size(); ++i)
      os << format_number(e.geometry.coords(i, 0)) << ',' << format_number(e.geometry.coords(i, 1)) << ','
         << format_number(e.profile.phases[i]) << '\n';
    close_output(os, path);
    out.files.push_back(path);
  }

  {
    const auto path = out_dir / "response.csv";
    auto os = open_output(path);
    write_header(os, cfg);
    os << "f_Hz,gain_db,beam_name\n";
    for (const auto& [name, ch] : responses) {
      const ArrayX<double> db = ch.gain_db();
      for (Eigen::Index k = 0; k < ch.freqs.size(); ++k)
        os << format_number(ch.freqs[k]) << ',' << format_number(db[k]) << ',' << name << '\n';
    }
    close_output(os, path);
    out.files.push_back(path);
  }
  {
    const auto path = out_dir / "summary.csv";
    auto os = open_output(path);
    write_header(os, cfg);
    write_records(os, out.records);
    close_output(os, path);
    out.files.push_back(path);
  }
  return out;
}

std::vector<SweepRecord> run_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir, std::size_t threads) {
  if (auto d = check_config(cfg); !d.empty()) throw std::invalid_argument("invalid configuration: " + d.front().to_string());
  std::filesystem::create_directories(out_dir);
  const ArrayGeometry<double> geometry = build_array(cfg.radius, cfg.resolved_spacing());

  std::vector<double> points = cfg.sweep.values();
  if (points.empty()) points.push_back(0.0);
  const std::size_t n_beams = cfg.beams.size();
  const std::size_t n_items = points.size() * n_beams;
  std::vector<SweepRecord> records(n_items);

  auto run_item = [&](std::size_t item, std::size_t inner_threads) {
    const std::size_t p = item / n_beams;
    const std::size_t b = item % n_beams;
    const RunConfig point_cfg = apply_sweep_value(cfg, cfg.sweep.variable, points[p]);
    const Scenario<double> s = scenario_for(point_cfg, geometry);
    records[item] = summarize(evaluate_beam(s, point_cfg.beams[b], inner_threads), cfg.sweep.variable, points[p]);
  };

  const std::size_t workers = resolve_threads(threads);
  if (workers > 1 && n_items >= workers) {
    parallel_for(n_items, workers, [&](std::size_t item) { run_item(item, 1); });
  } else {
    for (std::size_t item = 0; item < n_items; ++item) run_item(item, workers);
  }

  const auto path = out_dir / "sweep.csv";
  auto os = open_output(path);
  write_header(os, cfg);
  write_records(os, records);
  close_output(os, path);
  return records;
}

}  // namespace infocus::bench

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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "infocus/bench/config.hpp"
#include "infocus/bench/runner.hpp"

using namespace infocus::bench;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("infocus_test_bench_" + name);
  fs::remove_all(p);
  return p;
}

bool names_key(const ValidationResult& r, const std::string& key) {
  return std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [&](const Diagnostic& d) { return d.key == key; });
}

RunConfig small_config() {
  RunConfig cfg;
  cfg.radius = 0.01;
  cfg.n_sub = 64;
  cfg.response_points = 41;
  return cfg;
}

}  // namespace

TEST_CASE("empty document resolves to the defaults") {
  const auto r = validate_config("");
  REQUIRE(r.ok());
  const auto& c = *r.config;
  CHECK(c.radius == 0.1);
  CHECK(c.carrier == 300e9);
  CHECK(c.resolved_spacing() == doctest::Approx(0.5e-3).epsilon(1e-3));
  CHECK(c.resolved_spacing() == doctest::Approx(2.9979e8 / (2 * 300e9)));
  CHECK(c.beams.size() == 2);
  CHECK(c.sweep.variable == SweepVariable::None);
}

TEST_CASE("full document parses") {
  const auto r = validate_config(
      "# scenario\n"
      "R = 0.05\n"
      "delta = 1e-3   # coarse\n"
      "f_c = 2.4e11\n"
      "B = 2e10\n"
      "ell = 0.3\n"
      "gamma = -30\n"
      "q = none\n"
      "N_sub = 128\n"
      "eta = 2e-3\n"
      "T = 300\n"
      "beams = standard, thinned-standard(0.5),infocus\n"
      "sweep = angle\n"
      "sweep_steps = 5\n"
      "response_points = 11\n");
  REQUIRE(r.ok());
  const auto& c = *r.config;
  CHECK(c.radius == 0.05);
  CHECK(c.resolved_spacing() == 1e-3);
  CHECK(c.angle_deg == -30.0);
  CHECK_FALSE(c.q_bits);
  CHECK(c.n_sub == 128);
  REQUIRE(c.beams.size() == 3);
  CHECK(c.beams[1].kind == BeamKind::ThinnedStandard);
  CHECK(c.beams[1].delta == 0.5);
  CHECK(c.sweep.start == -75.0);
  CHECK(c.sweep.stop == 75.0);
  CHECK(c.sweep.steps == 5);
}

TEST_CASE("diagnostics name the offending key") {
  SUBCASE("negative radius") {
    const auto r = validate_config("R = -0.1\n");
    CHECK_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].key == "R");
    CHECK(r.diagnostics[0].line == 1);
    CHECK(r.diagnostics[0].to_string().find("R") != std::string::npos);
  }
  SUBCASE("baseband violation") {
    const auto r = validate_config("f_c = 300e9\nB = 600e9\n");
    CHECK_FALSE(r.ok());
    CHECK(names_key(r, "B"));
    CHECK(r.diagnostics[0].message.find("baseband") != std::string::npos);
    CHECK(r.diagnostics[0].line == 2);
  }
  SUBCASE("assorted errors are all reported") {
    const auto r = validate_config("bogus = 1\nR 0.1\nq = 1.5\nbeams = standard,laser\nsweep = time\nN_sub = x\nR = 1\nR = 2\n");
    CHECK_FALSE(r.ok());
    CHECK(names_key(r, "bogus"));
    CHECK(names_key(r, "q"));
    CHECK(names_key(r, "beams"));
    CHECK(names_key(r, "sweep"));
    CHECK(names_key(r, "N_sub"));
    CHECK(names_key(r, "R"));
    CHECK(r.diagnostics.size() >= 7);
  }
  SUBCASE("range checks") {
    CHECK(names_key(validate_config("gamma = 90\n"), "gamma"));
    CHECK(names_key(validate_config("q = 0\n"), "q"));
    CHECK(names_key(validate_config("beams = thinned-standard(1.5)\n"), "beams"));
    CHECK(names_key(validate_config("sweep = distance\nsweep_steps = 0\n"), "sweep_steps"));
    CHECK(names_key(validate_config("sweep = angle\nsweep_start = -95\n"), "sweep_start"));
    CHECK(names_key(validate_config("response_start = 3e11\nresponse_stop = 2e11\n"), "response_start"));
    CHECK(names_key(validate_config("delta = 0\n"), "delta"));
  }
}

TEST_CASE("resolved configuration round-trips") {
  RunConfig cfg = small_config();
  cfg.angle_deg = 12.5;
  cfg.q_bits.reset();
  cfg.beams = {{BeamKind::InFocus, 1.0}, {BeamKind::ThinnedStandard, 0.3}};
  cfg.sweep = default_sweep(SweepVariable::Thinning);
  std::string doc;
  for (const auto& [k, v] : cfg.resolved_entries()) doc += k + " = " + v + "\n";
  const auto r = validate_config(doc);
  REQUIRE(r.ok());
  CHECK(r.config->resolved_entries() == cfg.resolved_entries());
}

TEST_CASE("beam names and default sweeps") {
  for (const auto* s : {"standard", "infocus", "thinned-standard(0.4)"}) {
    const auto b = parse_beam(s);
    REQUIRE(b);
    CHECK(b->name() == s);
  }
  CHECK_FALSE(parse_beam("thinned-standard(0)"));
  CHECK(file_safe_name(*parse_beam("thinned-standard(0.4)")) == "thinned-standard_0.4");

  const auto d = default_sweep(SweepVariable::Distance).values();
  REQUIRE(d.size() == 12);
  CHECK(d.front() == 0.05);
  CHECK(d.back() == 0.60);
  CHECK(d[1] == doctest::Approx(0.10));
  CHECK(default_sweep(SweepVariable::Angle).values().size() == 31);
  const auto b = default_sweep(SweepVariable::Bandwidth).values();
  REQUIRE(b.size() == 8);
  CHECK(b.front() == 5e9);
  CHECK(b.back() == 40e9);
  CHECK(default_sweep(SweepVariable::Quantizer).values() == std::vector<double>{1, 2, 3, 4, 5, 6});
  const auto t = default_sweep(SweepVariable::Thinning).values();
  REQUIRE(t.size() == 10);
  CHECK(t[2] == doctest::Approx(0.3));
}

TEST_CASE("design writes profiles, a response curve and a summary") {
  const auto dir = scratch("design");
  // Default 10 cm aperture, where misfocus outweighs the 1/f spreading loss.
  RunConfig cfg;
  cfg.n_sub = 64;
  cfg.response_points = 81;  // odd, so f_c is on the grid
  cfg.beams = {{BeamKind::Standard, 1.0}};
  const auto out = run_design(cfg, dir, 0);
  CHECK(out.files.size() == 3);
  CHECK(out.records.size() == 1);
  for (const auto& f : out.files) {
    CAPTURE(f.string());
    CHECK(slurp(f).rfind("# R = 0.1\n", 0) == 0);
  }

  // Standard beam on boresight peaks at the carrier.
  std::istringstream resp(slurp(dir / "response.csv"));
  std::string line;
  double best_gain = -1e300, best_f = 0;
  while (std::getline(resp, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("f_Hz", 0) == 0) continue;
    std::istringstream row(line);
    std::string f, g, beam;
    std::getline(row, f, ',');
    std::getline(row, g, ',');
    std::getline(row, beam, ',');
    if (beam == "standard" && std::stod(g) > best_gain) {
      best_gain = std::stod(g);
      best_f = std::stod(f);
    }
  }
  CHECK(best_f == doctest::Approx(300e9));

  const std::string profile = slurp(dir / "profile_standard.csv");
  CHECK(profile.find("x_m,y_m,phase_rad\n") != std::string::npos);
  const auto rows = std::count(profile.begin(), profile.end(), '\n');
  CHECK(static_cast<std::size_t>(rows) == cfg.resolved_entries().size() + 1 + out.records[0].n_tx);
  fs::remove_all(dir);
}

TEST_CASE("one-point and empty sweeps agree with design") {
  const auto dir = scratch("onepoint");
  RunConfig cfg = small_config();
  cfg.angle_deg = 70.0;
  const auto design = run_design(cfg, dir / "design", 1);

  RunConfig single = cfg;
  single.sweep = {SweepVariable::Angle, 70.0, 70.0, 1};
  const auto one = run_sweep(single, dir / "one", 1);
  const auto none = run_sweep(cfg, dir / "none", 1);
  REQUIRE(one.size() == 2);
  REQUIRE(none.size() == 2);
  for (std::size_t b = 0; b < 2; ++b) {
    CHECK(one[b].rate_bps == design.records[b].rate_bps);
    CHECK(none[b].rate_bps == design.records[b].rate_bps);
    CHECK(one[b].beam == design.records[b].beam);
  }
  fs::remove_all(dir);
}

TEST_CASE("outputs are byte-identical across thread counts") {
  const auto dir = scratch("threads");
  RunConfig cfg = small_config();
  cfg.beams = {{BeamKind::Standard, 1.0}, {BeamKind::InFocus, 1.0}, {BeamKind::ThinnedStandard, 0.5}};
  cfg.sweep = {SweepVariable::Angle, -60.0, 60.0, 7};
  run_sweep(cfg, dir / "t1", 1);
  run_sweep(cfg, dir / "t3", 3);
  CHECK(slurp(dir / "t1" / "sweep.csv") == slurp(dir / "t3" / "sweep.csv"));
  const auto a = run_design(cfg, dir / "d1", 1);
  const auto b = run_design(cfg, dir / "d4", 4);
  REQUIRE(a.files.size() == b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) CHECK(slurp(a.files[i]) == slurp(b.files[i]));
  fs::remove_all(dir);
}

TEST_CASE("sweeps produce one record per point and beam in order") {
  const auto dir = scratch("order");
  RunConfig cfg = small_config();
  cfg.beams = {{BeamKind::InFocus, 1.0}, {BeamKind::ThinnedStandard, 1.0}};
  cfg.sweep = {SweepVariable::Thinning, 0.2, 1.0, 5};
  const auto recs = run_sweep(cfg, dir, 2);
  REQUIRE(recs.size() == 10);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].variable == "thinning");
    CHECK(recs[i].value == doctest::Approx(0.2 + 0.2 * double(i / 2)));
  }
  CHECK(recs[1].beam == "thinned-standard(0.2)");
  CHECK(recs[1].n_tx < recs[9].n_tx);
  CHECK(recs[0].n_tx == recs[8].n_tx);
  fs::remove_all(dir);
}

TEST_CASE("unwritable output location is a runtime error") {
  const auto file = scratch("blocker");
  std::ofstream(file) << "x";
  CHECK_THROWS(run_design(small_config(), file / "sub", 1));
  fs::remove_all(file);
}

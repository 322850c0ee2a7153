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

// Command-line front end: design, sweep and validate subcommands.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "infocus/bench/config.hpp"
#include "infocus/bench/runner.hpp"

namespace {

using infocus::bench::RunConfig;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr double kFastRadius = 0.025;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  std::string beams;
  bool fast = false;
  std::size_t threads = 0;
};

std::string join_diagnostics(const std::vector<infocus::bench::Diagnostic>& diags) {
  std::string msg;
  for (const auto& d : diags) msg += (msg.empty() ? "" : "\n") + d.to_string();
  return msg;
}

RunConfig load_config(const Options& opt) {
  std::string text;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + opt.config_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  auto result = infocus::bench::validate_config(text);
  if (!result.ok()) throw ConfigError(join_diagnostics(result.diagnostics));
  RunConfig cfg = *result.config;

  if (!opt.beams.empty()) {
    cfg.beams.clear();
    std::istringstream list(opt.beams);
    for (std::string token; std::getline(list, token, ',');) {
      const auto beam = infocus::bench::parse_beam(token);
      if (!beam) throw ConfigError("--beams: unknown beam '" + token + "'");
      cfg.beams.push_back(*beam);
    }
  }
  if (opt.fast) cfg.radius = kFastRadius;
  if (auto diags = infocus::bench::check_config(cfg); !diags.empty()) throw ConfigError(join_diagnostics(diags));
  return cfg;
}

void print_records(const std::vector<infocus::bench::SweepRecord>& records) {
  for (const auto& r : records) {
    std::cout << r.variable << '=' << r.value << "  " << r.beam << "  rate " << r.rate_bps * 1e-9 << " Gb/s  gain ["
              << r.gain_min_db << ", " << r.gain_max_db << "] dB  n_tx " << r.n_tx << '\n';
  }
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error:\n" << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"infocus: wideband near-field beamforming for circular phased arrays"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool writes) {
    sub->add_option("--config", opt.config_path, "Key-value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--beams", opt.beams, "Comma-separated beams: standard, infocus, thinned-standard(delta)");
    sub->add_flag("--fast", opt.fast, "Use a 2.5 cm array radius");
    if (writes) {
      sub->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
      sub->add_option("--threads", opt.threads, "Worker threads (0: all cores)")->capture_default_str();
    }
  };

  auto* design = app.add_subcommand("design", "Design beams and write profiles, response and summary CSVs");
  add_common(design, true);
  auto* sweep = app.add_subcommand("sweep", "Evaluate a parameter sweep and write sweep.csv");
  add_common(sweep, true);
  auto* validate = app.add_subcommand("validate", "Check a configuration and print its resolved form");
  add_common(validate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  if (design->parsed()) {
    return guarded([&] {
      const RunConfig cfg = load_config(opt);
      const auto out = infocus::bench::run_design(cfg, opt.out_dir, opt.threads);
      print_records(out.records);
      for (const auto& f : out.files) std::cout << "wrote " << f.string() << '\n';
    });
  }
  if (sweep->parsed()) {
    return guarded([&] {
      const RunConfig cfg = load_config(opt);
      print_records(infocus::bench::run_sweep(cfg, opt.out_dir, opt.threads));
      std::cout << "wrote " << (std::filesystem::path(opt.out_dir) / "sweep.csv").string() << '\n';
    });
  }
  return guarded([&] {
    const RunConfig cfg = load_config(opt);
    for (const auto& [key, value] : cfg.resolved_entries()) std::cout << key << " = " << value << '\n';
  });
}

// Copyright 2026 The tqstlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tqstlab: sweep | entangled | scan | report.
//
// Exit codes: 0 success, 2 contract or input errors, 3 reconstruction did
// not converge, 1 anything else.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tqst/error.hpp"
#include "tqst/harness.hpp"
#include "tqst/io.hpp"

namespace fs = std::filesystem;
using namespace tqst;

namespace {

struct Options {
  std::string config;
  std::string noise;
  std::string layout;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "experiment JSON document")->required()->check(CLI::ExistingFile);
  sub->add_option("--noise", o.noise, "noise parameter JSON (replaces the config's noise)")
      ->check(CLI::ExistingFile);
  sub->add_option("--layout", o.layout, "circuit layout JSON (replaces the preset circuit)")
      ->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--seed", o.seed, "master seed (replaces the config's seed)");
}

harness::ExperimentConfig load_config(const Options& o, const std::string& experiment) {
  auto cfg = harness::ExperimentConfig::load(o.config);
  if (cfg.experiment.empty()) cfg.experiment = experiment;
  if (cfg.experiment != experiment) {
    throw ContractError("config describes a '" + cfg.experiment + "' experiment, not '" + experiment + "'");
  }
  if (!o.noise.empty()) {
    cfg.noise = io::noise_from_json(io::read_json_file(o.noise));
    cfg.noise_name = "file";
  }
  if (!o.layout.empty()) cfg.layout = io::layout_from_json(io::read_json_file(o.layout));
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (o.seed) cfg.seed = *o.seed;
  cfg.validate();
  return cfg;
}

void report(const harness::RunManifest& m, const fs::path& dir) {
  for (const auto& w : m.warnings) std::cerr << "warning: " << w << '\n';
  std::cerr << m.experiment << ": " << m.files.size() << " files in " << dir.string() << " ("
            << m.elapsed_seconds << " s)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold quantum state tomography on simulated photonic circuits"};
  app.require_subcommand(1);
  Options opts;
  auto* sweep = app.add_subcommand("sweep", "random-state Gini sweep");
  auto* entangled = app.add_subcommand("entangled", "entangled preset: model, QST, tQST and threshold scan");
  auto* scan = app.add_subcommand("scan", "projector-count scan versus threshold");
  auto* rep = app.add_subcommand("report", "merge manifests into one bundle");
  for (auto* s : {sweep, entangled, scan}) add_common(s, opts);
  rep->add_option("--config", opts.config, "JSON {manifests: [...], out: dir}")->required()->check(CLI::ExistingFile);
  rep->add_option("--out", opts.out, "output directory");
  // Accepted for a uniform command line; a report has no noise, layout or seed.
  rep->add_option("--noise", opts.noise);
  rep->add_option("--layout", opts.layout);
  rep->add_option("--seed", opts.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sweep->parsed()) {
      const auto cfg = load_config(opts, "sweep");
      report(harness::cmd_sweep(cfg), cfg.out_dir);
    } else if (entangled->parsed()) {
      const auto cfg = load_config(opts, "entangled");
      report(harness::cmd_entangled(cfg), cfg.out_dir);
    } else if (scan->parsed()) {
      const auto cfg = load_config(opts, "threshold-scan");
      report(harness::cmd_threshold_scan(cfg), cfg.out_dir);
    } else {
      const fs::path cfg_path = opts.config;
      const auto j = io::read_json_file(cfg_path);
      std::vector<fs::path> manifests;
      for (const auto& p : j.at("manifests")) manifests.push_back(cfg_path.parent_path() / p.get<std::string>());
      const fs::path out = !opts.out.empty() ? fs::path(opts.out)
                                              : cfg_path.parent_path() / j.value("out", std::string("report"));
      report(harness::cmd_report(manifests, out), out);
    }
  } catch (const tomo::ReconstructionError& e) {
    std::cerr << "reconstruction error: " << e.what() << '\n';
    return 3;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

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

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "doctest.h"
#include "tqst/error.hpp"
#include "tqst/harness.hpp"

using namespace tqst;
using namespace tqst::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / "tqst_harness_test" / name;
  fs::remove_all(p);
  return p;
}

ExperimentConfig small_sweep(const fs::path& out) {
  auto c = ExperimentConfig::from_json(io::Json::parse(
      R"({"experiment":"sweep","n_qubits":2,"n_states":3,"pool":30,"noise":"ideal","shots":4000,"seed":5,"mle_starts":2})"));
  c.out_dir = out;
  return c;
}

}  // namespace

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, "sweep") == derive_seed(1, "sweep"));
  CHECK(derive_seed(1, "sweep") != derive_seed(2, "sweep"));
  CHECK(derive_seed(1, "counts/GHZ3") != derive_seed(1, "mle/GHZ3"));
}

TEST_CASE("config parsing and validation") {
  const auto c = ExperimentConfig::from_json(
      io::Json::parse(R"({"experiment":"entangled","preset":"GHZ3","noise":"lab","coupler_seed":3,"seed":9})"));
  CHECK(c.noise_name == "lab");
  CHECK(c.noise.coupler_overrides.front().coupler == noise::NoiseParams::lab(3).coupler_overrides.front().coupler);
  CHECK(c.seed == 9);
  CHECK(c.shots == 100000);
  CHECK_NOTHROW(c.validate());

  auto other = c;
  other.seed = 10;
  CHECK(other.hash() != c.hash());
  auto moved = c;
  moved.out_dir = "elsewhere";
  CHECK(moved.hash() == c.hash());

  auto bad = c;
  bad.experiment = "bogus";
  CHECK_THROWS_AS(bad.validate(), ContractError);
  bad = c;
  bad.preset = "RANDOM";
  CHECK_THROWS_AS(bad.validate(), ContractError);
  bad = c;
  bad.shots = 0;
  CHECK_THROWS_AS(bad.validate(), ContractError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(io::Json::parse(R"({"experiment":"sweep","n_qubits":"two"})")),
                  IoError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(io::Json::parse(R"({"experiment":"sweep","n_qubits":2,"noise":{"g2":0.9}})")).validate(), ParameterError);
}

TEST_CASE("manifest round trip") {
  RunManifest m;
  m.experiment = "sweep";
  m.config_hash = "00ff";
  m.files = {{"comparison", "", "comparison.csv", "abcd"}};
  m.warnings = {"w"};
  const auto back = RunManifest::from_json(m.to_json());
  CHECK(io::dump(back.to_json()) == io::dump(m.to_json()));
}

TEST_CASE("threshold scan on noise-free GHZ3 has two distinct plans") {
  const auto layout = mesh::preset_layout(mesh::PresetStateId::ghz3());
  tomo::Acquirer acq(tomo::ModelSource{layout, noise::NoiseParams::ideal()}, 3, {100000, 1, true});
  const auto rho0 = tomo::run_qst(acq, {2, 1}).rho;
  const auto rows = threshold_scan(acq, rho0, {2, 1});
  std::set<std::size_t> counts;
  int flagged = 0;
  for (const auto& r : rows) {
    if (r.kind != "tqst") continue;
    counts.insert(r.n_t);
    if (r.gini_flag) {
      ++flagged;
      CHECK(r.n_t == 10);
    }
  }
  CHECK(counts == std::set<std::size_t>{8, 10});
  CHECK(flagged == 1);
  REQUIRE(rows.back().kind == "qst");
  CHECK(rows.back().n_t == 64);
}

TEST_CASE("threshold scan on noise-free Bell state") {
  const auto layout = mesh::preset_layout(mesh::PresetStateId::bell_psi_plus());
  tomo::Acquirer acq(tomo::ModelSource{layout, noise::NoiseParams::ideal()}, 2, {100000, 2, false});
  const auto rho0 = tomo::run_qst(acq, {3, 2}).rho;
  const auto rows = threshold_scan(acq, rho0, {3, 2});
  CHECK(rows.front().n_t == 4);
  for (const auto& r : rows) {
    if (r.gini_flag) CHECK(r.n_t == 6);
    if (r.n_t >= 6) CHECK(r.f_0t >= 0.99);
  }
  std::ostringstream os;
  write_scan_csv(os, "BELL_PSI_PLUS", rows);
  CHECK(os.str().rfind("BELL_PSI_PLUS,tqst,", 0) == 0);
}

TEST_CASE("sweep outputs are reproducible and reportable") {
  const auto a = scratch("sweep_a");
  const auto b = scratch("sweep_b");
  const auto ma = cmd_sweep(small_sweep(a));
  const auto mb = cmd_sweep(small_sweep(b));
  CHECK(!ma.incomplete);
  REQUIRE(ma.files.size() == mb.files.size());
  std::set<std::string> roles;
  for (std::size_t k = 0; k < ma.files.size(); ++k) {
    roles.insert(ma.files[k].role);
    CHECK(ma.files[k].hash == mb.files[k].hash);
    CHECK(io::read_text_file(a / ma.files[k].path) == io::read_text_file(b / mb.files[k].path));
  }
  CHECK(roles.count("comparison") == 1);
  CHECK(io::read_text_file(a / "manifest.json") == io::read_text_file(b / "manifest.json"));

  const auto comparison = io::read_text_file(a / "comparison.csv");
  CHECK(std::count(comparison.begin(), comparison.end(), '\n') == 4);

  const auto r1 = scratch("report1");
  const auto r2 = scratch("report2");
  cmd_report({a / "manifest.json"}, r1);
  cmd_report({a / "manifest.json"}, r2);
  CHECK(io::read_text_file(r1 / "bundle.json") == io::read_text_file(r2 / "bundle.json"));
  CHECK(io::read_text_file(r1 / "comparison.csv") == comparison);

  io::write_text_file(a / "comparison.csv", comparison + "tampered\n");
  CHECK_THROWS_AS(cmd_report({a / "manifest.json"}, scratch("report3")), StaleDataError);
  fs::remove_all(fs::temp_directory_path() / "tqst_harness_test");
}

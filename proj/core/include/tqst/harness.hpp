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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tqst/density_matrix.hpp"
#include "tqst/io.hpp"
#include "tqst/mesh.hpp"
#include "tqst/metrics.hpp"
#include "tqst/noise.hpp"
#include "tqst/tomo.hpp"

namespace tqst::harness {

inline constexpr const char* kToolName = "tqstlab";
inline constexpr const char* kToolVersion = "0.1.0";

/// One experiment, read from a JSON document:
///   experiment   "sweep" | "entangled" | "threshold-scan"
///   n_qubits     sweep size (entangled/scan take it from the preset)
///   preset       BELL_PSI_PLUS | GHZ3 | W3 | GHZ4
///   n_states     sweep states (default 40), pool (default 50 * n_states)
///   noise        "ideal" | "lab" | inline object | path to a noise file
///   coupler_seed seed of the drawn couplers when noise is "lab"
///   layout       optional path to a layout file replacing the preset circuit
///   shots        per setting (default 100000); exact: true uses probabilities
///   seed         master seed; mle_starts (default 5);
///                mle_max_iterations (default 5000); out (output directory)
///
/// Random streams: the sweep pool uses derive_seed(seed, "sweep"); counts for
/// a state use derive_seed(seed, "counts/<label>") split per setting by name;
/// MLE random starts use derive_seed(seed, "mle/<label>").
struct ExperimentConfig {
  std::string experiment;
  int n_qubits = 0;
  std::string preset;
  int n_states = 40;
  int pool = 0;
  std::string noise_name = "ideal";
  noise::NoiseParams noise;
  std::optional<mesh::MeshLayout> layout;
  std::uint64_t shots = 100000;
  bool exact = false;
  std::uint64_t seed = 0;
  int mle_starts = 5;
  int mle_max_iterations = 5000;
  std::filesystem::path out_dir = "out";

  /// Relative paths inside the document resolve against `base_dir`.
  static ExperimentConfig from_json(const io::Json& j, const std::filesystem::path& base_dir = {});
  static ExperimentConfig load(const std::filesystem::path& path);
  /// Fully resolved form (noise and layout inlined); hashed into the manifest.
  io::Json to_json() const;
  std::string hash() const;
  void validate() const;
};

std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag);

struct OutputFile {
  std::string role;
  std::string label;
  std::string path;  // relative to the manifest directory
  std::string hash;
};

struct RunManifest {
  std::string experiment;
  std::string config_hash;
  std::vector<OutputFile> files;
  std::vector<std::string> warnings;
  bool incomplete = false;
  double elapsed_seconds = 0.0;  // reported on stderr, not written

  io::Json to_json() const;
  static RunManifest from_json(const io::Json& j);
};

struct ScanRow {
  std::string kind;  // "tqst" or the t = 0 "qst" reference
  double t = 0.0;
  std::size_t n_t = 0;
  std::size_t settings = 0;
  double f_0t = 0.0;
  double p_t = 0.0;
  bool gini_flag = false;
};

/// Thresholds from above every pair score down through each distinct pair
/// score (largest first), reconstructing each plan. The row whose plan equals
/// the Gini-threshold plan is flagged. A final t = 0 row of kind "qst" is
/// the reference.
std::vector<ScanRow> threshold_scan(tomo::Acquirer& acquirer, const DensityMatrix& rho_0,
                                    const tomo::MleOptions& mle);

struct StateRun {
  std::string label;
  double gini = 0.0;  // ideal diagonal
  noise::ModelPrediction model;
  tomo::TqstResult qst;
  tomo::TqstResult tqst;
  metrics::ComparisonRow row;
  std::vector<ScanRow> scan;
  std::vector<std::string> warnings;
};

/// QST, Gini-threshold tQST and the model prediction for one circuit.
/// The scan is filled only when `with_scan` is set.
StateRun run_state(const std::string& label, const mesh::MeshLayout& layout, int n_qubits,
                   const ExperimentConfig& config, bool with_scan);

StateRun run_entangled(const ExperimentConfig& config);

RunManifest cmd_sweep(const ExperimentConfig& config);
RunManifest cmd_entangled(const ExperimentConfig& config);
RunManifest cmd_threshold_scan(const ExperimentConfig& config);

/// Merges the comparison rows and scan rows of several manifests into
/// `out_dir` (bundle.json, comparison.csv, scan.csv). Throws StaleDataError
/// when an input file no longer matches its recorded hash.
RunManifest cmd_report(const std::vector<std::filesystem::path>& manifests,
                       const std::filesystem::path& out_dir);

void write_scan_csv(std::ostream& os, const std::string& label, const std::vector<ScanRow>& rows);
inline constexpr const char* kScanColumns = "label,kind,t,N_t,settings,F_0t,P_t,gini_flag";

}  // namespace tqst::harness

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

#include "tqst/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "tqst/error.hpp"
#include "tqst/stategen.hpp"

namespace tqst::harness {

namespace fs = std::filesystem;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool is_entangled_kind(const std::string& e) { return e == "entangled" || e == "threshold-scan"; }

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

class OutputWriter {
 public:
  OutputWriter(fs::path dir, RunManifest& manifest) : dir_(std::move(dir)), manifest_(manifest) {}

  void add(const std::string& role, const std::string& label, const std::string& rel,
           const std::string& contents) {
    const auto hash = io::write_text_file(dir_ / rel, contents);
    manifest_.files.push_back({role, label, rel, hash});
  }

  void finish() { io::write_text_file(dir_ / "manifest.json", io::dump(manifest_.to_json())); }

 private:
  fs::path dir_;
  RunManifest& manifest_;
};

void write_state_files(OutputWriter& w, const StateRun& run) {
  const auto dir = lower(run.label) + "/";
  const auto& m = run.model.rho.matrix();
  const auto& q = run.qst.rho.matrix();
  const auto& t = run.tqst.rho.matrix();
  w.add("rho_model_re", run.label, dir + "rho_model_re.csv", io::matrix_csv(m.real()));
  w.add("rho_model_im", run.label, dir + "rho_model_im.csv", io::matrix_csv(m.imag()));
  w.add("rho_qst_re", run.label, dir + "rho_qst_re.csv", io::matrix_csv(q.real()));
  w.add("rho_qst_im", run.label, dir + "rho_qst_im.csv", io::matrix_csv(q.imag()));
  w.add("rho_tqst_re", run.label, dir + "rho_tqst_re.csv", io::matrix_csv(t.real()));
  w.add("rho_tqst_im", run.label, dir + "rho_tqst_im.csv", io::matrix_csv(t.imag()));
  w.add("reconstruction_qst", run.label, dir + "qst.json", io::dump(io::reconstruction_to_json(run.qst)));
  w.add("reconstruction_tqst", run.label, dir + "tqst.json", io::dump(io::reconstruction_to_json(run.tqst)));
}

std::vector<std::string> csv_body(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag) {
  return splitmix64(splitmix64(seed) ^ io::fnv1a(tag));
}

// ---- configuration ---------------------------------------------------------

ExperimentConfig ExperimentConfig::from_json(const io::Json& j, const fs::path& base_dir) {
  ExperimentConfig c;
  try {
    c.experiment = j.value("experiment", std::string{});
    c.n_qubits = j.value("n_qubits", 0);
    c.preset = j.value("preset", std::string{});
    c.n_states = j.value("n_states", 40);
    c.pool = j.value("pool", 0);
    c.shots = j.value("shots", std::uint64_t{100000});
    c.exact = j.value("exact", false);
    c.seed = j.value("seed", std::uint64_t{0});
    c.mle_starts = j.value("mle_starts", 5);
    c.mle_max_iterations = j.value("mle_max_iterations", 5000);
    if (j.contains("out")) c.out_dir = base_dir / j.at("out").get<std::string>();
    const auto coupler_seed = j.value("coupler_seed", noise::kLabCouplerSeed);
    if (j.contains("noise")) {
      const auto& n = j.at("noise");
      if (n.is_object()) {
        c.noise_name = "inline";
        c.noise = io::noise_from_json(n);
      } else {
        const auto s = n.get<std::string>();
        if (s == "ideal") {
          c.noise_name = s;
          c.noise = noise::NoiseParams::ideal();
        } else if (s == "lab") {
          c.noise_name = s;
          c.noise = noise::NoiseParams::lab(coupler_seed);
        } else {
          c.noise_name = "file";
          c.noise = io::noise_from_json(io::read_json_file(base_dir / s));
        }
      }
    }
    if (j.contains("layout") && !j.at("layout").is_null()) {
      const auto& l = j.at("layout");
      c.layout = l.is_object() ? io::layout_from_json(l)
                               : io::layout_from_json(io::read_json_file(base_dir / l.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  return from_json(io::read_json_file(path), path.parent_path());
}

io::Json ExperimentConfig::to_json() const {
  io::Json j;
  j["experiment"] = experiment;
  j["n_qubits"] = n_qubits;
  j["preset"] = preset;
  j["n_states"] = n_states;
  j["pool"] = pool;
  j["noise_name"] = noise_name;
  j["noise"] = io::noise_to_json(noise);
  j["layout"] = layout ? io::layout_to_json(*layout) : io::Json(nullptr);
  j["shots"] = shots;
  j["exact"] = exact;
  j["seed"] = seed;
  j["mle_starts"] = mle_starts;
  j["mle_max_iterations"] = mle_max_iterations;
  return j;
}

std::string ExperimentConfig::hash() const { return io::hex64(io::fnv1a(io::dump(to_json()))); }

void ExperimentConfig::validate() const {
  if (experiment != "sweep" && !is_entangled_kind(experiment)) {
    throw ContractError("config: unknown experiment '" + experiment + "'");
  }
  if (shots < 1) throw ContractError("config: shots must be >= 1");
  if (mle_starts < 1) throw ContractError("config: mle_starts must be >= 1");
  if (mle_max_iterations < 1) throw ContractError("config: mle_max_iterations must be >= 1");
  noise.validate();
  if (experiment == "sweep") {
    if (n_qubits != 2 && n_qubits != 3) throw ContractError("config: sweeps take n_qubits 2 or 3");
    if (n_states < 1) throw ContractError("config: n_states must be >= 1");
  } else {
    if (preset.empty()) throw ContractError("config: " + experiment + " needs a preset");
    if (mesh::parse_preset(preset) == mesh::PresetKind::random) {
      throw ContractError("config: " + experiment + " needs an entangled preset");
    }
  }
}

// ---- manifests -------------------------------------------------------------

io::Json RunManifest::to_json() const {
  io::Json files_j = io::Json::array();
  for (const auto& f : files) {
    files_j.push_back({{"role", f.role}, {"label", f.label}, {"path", f.path}, {"hash", f.hash}});
  }
  return {{"tool", kToolName},     {"version", kToolVersion}, {"experiment", experiment},
          {"config_hash", config_hash}, {"incomplete", incomplete}, {"warnings", warnings},
          {"files", files_j}};
}

RunManifest RunManifest::from_json(const io::Json& j) {
  RunManifest m;
  try {
    m.experiment = j.at("experiment").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.incomplete = j.value("incomplete", false);
    m.warnings = j.value("warnings", std::vector<std::string>{});
    for (const auto& f : j.at("files")) {
      m.files.push_back({f.at("role").get<std::string>(), f.at("label").get<std::string>(),
                         f.at("path").get<std::string>(), f.at("hash").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("manifest: ") + e.what());
  }
  return m;
}

// ---- experiments -----------------------------------------------------------

std::vector<ScanRow> threshold_scan(tomo::Acquirer& acquirer, const DensityMatrix& rho_0,
                                    const tomo::MleOptions& mle) {
  const int n = acquirer.n_qubits();
  const auto diag = tomo::measure_diagonal(acquirer);
  const auto gini_pairs = tomo::select_offdiagonals(diag, tomo::threshold(diag, n));

  std::vector<double> scores;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      const double s = tomo::pair_score(diag, i, j);
      if (s > 0.0) scores.push_back(s);
    }
  }
  std::sort(scores.begin(), scores.end(), std::greater<>());
  scores.erase(std::unique(scores.begin(), scores.end()), scores.end());

  std::vector<double> ts;
  ts.push_back(scores.empty() ? 1.0 : std::nextafter(scores.front(), std::numeric_limits<double>::infinity()));
  ts.insert(ts.end(), scores.begin(), scores.end());

  std::vector<ScanRow> rows;
  for (double t : ts) {
    const auto plan = tomo::build_plan(diag, t, n);
    const auto res = tomo::reconstruct(plan, acquirer, mle);
    rows.push_back({"tqst", t, plan.projector_count(), plan.setting_count(),
                    metrics::fidelity(rho_0, res.rho), metrics::purity(res.rho),
                    plan.pairs == gini_pairs});
  }
  const auto full = tomo::build_plan(diag, 0.0, n);
  rows.push_back({"qst", 0.0, full.projector_count(), full.setting_count(),
                  metrics::fidelity(rho_0, rho_0), metrics::purity(rho_0), false});
  return rows;
}

StateRun run_state(const std::string& label, const mesh::MeshLayout& layout, int n_qubits,
                   const ExperimentConfig& config, bool with_scan) {
  const auto spec = stategen::DualRailSpec::for_qubits(n_qubits, layout.modes);
  const auto ideal = stategen::prepare_state(layout, n_qubits);
  const RealVector pops = ideal.state.populations();

  StateRun run{label,
               tomo::gini_index(std::span<const double>(pops.data(), static_cast<std::size_t>(pops.size()))),
               noise::predicted_density_matrix(layout, spec, config.noise),
               {},
               {},
               {},
               {},
               {}};
  if (run.model.truncation_warning) {
    run.warnings.push_back(label + ": multiphoton truncation mass " + io::format_double(run.model.truncated) +
                           " exceeds " + io::format_double(noise::kTruncationWarningLevel));
  }

  tomo::AcquireOptions acq_opts{config.shots, derive_seed(config.seed, "counts/" + label), config.exact};
  tomo::Acquirer acquirer(tomo::ModelSource{layout, config.noise}, n_qubits, acq_opts);
  tomo::MleOptions mle;
  mle.starts = config.mle_starts;
  mle.max_iterations = config.mle_max_iterations;
  mle.seed = derive_seed(config.seed, "mle/" + label);

  run.qst = tomo::run_qst(acquirer, mle);
  run.tqst = tomo::run_tqst(acquirer, tomo::ThresholdMode::gini(), mle);
  metrics::RunSummary summary{label,
                              run.gini,
                              run.qst.rho,
                              run.tqst.rho,
                              run.model.rho,
                              run.tqst.diagnostics.n_t,
                              run.qst.diagnostics.n_t,
                              run.tqst.diagnostics.settings,
                              run.qst.diagnostics.settings};
  run.row = metrics::comparison_table({summary}).front();
  if (with_scan) run.scan = threshold_scan(acquirer, run.qst.rho, mle);
  return run;
}

StateRun run_entangled(const ExperimentConfig& config) {
  config.validate();
  const auto kind = mesh::parse_preset(config.preset);
  mesh::PresetStateId id;
  switch (kind) {
    case mesh::PresetKind::bell_psi_plus: id = mesh::PresetStateId::bell_psi_plus(); break;
    case mesh::PresetKind::ghz3: id = mesh::PresetStateId::ghz3(); break;
    case mesh::PresetKind::w3: id = mesh::PresetStateId::w3(); break;
    case mesh::PresetKind::ghz4: id = mesh::PresetStateId::ghz4(); break;
    case mesh::PresetKind::random: throw ContractError("entangled runs need an entangled preset");
  }
  const auto layout = config.layout ? *config.layout : mesh::preset_layout(id);
  return run_state(mesh::preset_name(kind), layout, id.n_qubits, config, true);
}

void write_scan_csv(std::ostream& os, const std::string& label, const std::vector<ScanRow>& rows) {
  for (const auto& r : rows) {
    os << label << ',' << r.kind << ',' << io::format_double(r.t) << ',' << r.n_t << ',' << r.settings
       << ',' << io::format_double(r.f_0t) << ',' << io::format_double(r.p_t) << ','
       << (r.gini_flag ? 1 : 0) << '\n';
  }
}

namespace {

RunManifest entangled_like(const ExperimentConfig& config, bool full_outputs) {
  const auto start = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.experiment = config.experiment;
  manifest.config_hash = config.hash();
  OutputWriter w(config.out_dir, manifest);

  const auto run = run_entangled(config);
  manifest.warnings = run.warnings;
  if (full_outputs) {
    write_state_files(w, run);
    std::ostringstream cmp;
    metrics::write_comparison_csv(cmp, {run.row});
    w.add("comparison", run.label, "comparison.csv", cmp.str());
  }
  std::ostringstream scan;
  scan << kScanColumns << '\n';
  write_scan_csv(scan, run.label, run.scan);
  w.add("scan", run.label, "scan.csv", scan.str());
  w.finish();
  manifest.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return manifest;
}

}  // namespace

RunManifest cmd_entangled(const ExperimentConfig& config) { return entangled_like(config, true); }

RunManifest cmd_threshold_scan(const ExperimentConfig& config) { return entangled_like(config, false); }

RunManifest cmd_sweep(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.experiment = config.experiment;
  manifest.config_hash = config.hash();
  OutputWriter w(config.out_dir, manifest);

  const auto sweep =
      stategen::random_sweep(config.n_qubits, config.n_states, config.pool, derive_seed(config.seed, "sweep"));
  std::ostringstream states;
  stategen::write_sweep_csv(states, sweep);
  w.add("sweep_states", "", "sweep.csv", states.str());

  std::vector<metrics::ComparisonRow> rows;
  std::ostringstream fig;
  fig << "index,gini,F_0t,F_0m,F_tm,N_t_over_N0\n";
  auto flush = [&] {
    std::ostringstream cmp;
    metrics::write_comparison_csv(cmp, rows);
    w.add("comparison", "", "comparison.csv", cmp.str());
    w.add("fig3", "", "fig3.csv", fig.str());
    w.finish();
  };
  try {
    for (std::size_t k = 0; k < sweep.entries.size(); ++k) {
      const auto& e = sweep.entries[k];
      char label[32];
      std::snprintf(label, sizeof label, "state%03zu", k);
      auto run = run_state(label, e.layout, config.n_qubits, config, false);
      manifest.warnings.insert(manifest.warnings.end(), run.warnings.begin(), run.warnings.end());
      const auto& r = run.row;
      fig << k << ',' << io::format_double(e.gini) << ',' << io::format_double(r.f_0t) << ','
          << io::format_double(r.f_0m) << ',' << io::format_double(r.f_tm) << ','
          << io::format_double(static_cast<double>(r.n_t) / static_cast<double>(r.n_0)) << '\n';
      rows.push_back(r);
    }
  } catch (...) {
    manifest.incomplete = true;
    flush();
    throw;
  }
  flush();
  manifest.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return manifest;
}

RunManifest cmd_report(const std::vector<fs::path>& manifests, const fs::path& out_dir) {
  if (manifests.empty()) throw ContractError("report: no manifests given");
  RunManifest report;
  report.experiment = "report";
  io::Json sources = io::Json::array();
  std::vector<std::string> comparison;
  std::vector<std::string> scan;
  std::uint64_t combined = 0;
  for (const auto& path : manifests) {
    const auto m = RunManifest::from_json(io::read_json_file(path));
    const auto base = path.parent_path();
    for (const auto& f : m.files) {
      const auto text = io::read_text_file(base / f.path);
      if (io::hex64(io::fnv1a(text)) != f.hash) {
        throw StaleDataError("report: " + (base / f.path).string() + " changed since " + path.string() +
                             " was written");
      }
      if (f.role == "comparison") {
        const auto rows = csv_body(text);
        comparison.insert(comparison.end(), rows.begin(), rows.end());
      } else if (f.role == "scan") {
        const auto rows = csv_body(text);
        scan.insert(scan.end(), rows.begin(), rows.end());
      }
    }
    for (const auto& wmsg : m.warnings) report.warnings.push_back(m.config_hash + ": " + wmsg);
    sources.push_back({{"manifest", path.generic_string()},
                       {"experiment", m.experiment},
                       {"config_hash", m.config_hash},
                       {"incomplete", m.incomplete}});
    combined = combined * 31 + io::fnv1a(m.config_hash);
  }
  report.config_hash = io::hex64(combined);

  OutputWriter w(out_dir, report);
  io::Json bundle = {{"tool", kToolName},
                     {"version", kToolVersion},
                     {"warnings", report.warnings},
                     {"sources", sources},
                     {"comparison_columns", metrics::kComparisonColumns},
                     {"scan_columns", kScanColumns}};
  w.add("bundle", "", "bundle.json", io::dump(bundle));
  std::string cmp = std::string(metrics::kComparisonColumns) + "\n";
  for (const auto& l : comparison) cmp += l + "\n";
  w.add("comparison", "", "comparison.csv", cmp);
  std::string sc = std::string(kScanColumns) + "\n";
  for (const auto& l : scan) sc += l + "\n";
  w.add("scan", "", "scan.csv", sc);
  w.finish();
  return report;
}

}  // namespace tqst::harness

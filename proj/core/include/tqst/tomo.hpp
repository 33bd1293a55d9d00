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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tqst/density_matrix.hpp"
#include "tqst/error.hpp"
#include "tqst/mesh.hpp"
#include "tqst/noise.hpp"
#include "tqst/pauli.hpp"
#include "tqst/sparsity.hpp"
#include "tqst/types.hpp"

namespace tqst::tomo {

using DiagonalVector = std::vector<double>;
using IndexPair = std::pair<std::size_t, std::size_t>;

enum class ProjectorKind { diagonal, real_part, imag_part };

/// |i><i|, or for a pair i<j the state (|i>+|j>)/sqrt2 (real part) or
/// (|i>+i|j>)/sqrt2 (imaginary part), with its Pauli expansion.
struct Projector {
  ProjectorKind kind = ProjectorKind::diagonal;
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<PauliTerm> terms;

  ComplexVector state(int n_qubits) const;
};

struct ProjectorPlan {
  int n_qubits = 0;
  double threshold = 0.0;
  std::vector<IndexPair> pairs;
  std::vector<Projector> projectors;  // 2^n diagonal first, then (real, imag) per pair
  std::vector<LocalBases> settings;   // computational setting first

  std::size_t projector_count() const { return projectors.size(); }
  std::size_t setting_count() const { return settings.size(); }
};

Projector make_projector(ProjectorKind kind, std::size_t i, std::size_t j, int n_qubits);

/// Projector plan for threshold t on the (normalized) diagonal c.
ProjectorPlan build_plan(std::span<const double> c, double t, int n_qubits);

/// Plan for an explicit pair list (used by threshold scans).
ProjectorPlan build_plan_for_pairs(std::vector<IndexPair> pairs, double t, int n_qubits);

/// Local settings covering every non-identity Pauli string of the projectors:
/// the computational setting, then a greedy cover (setting covering the most
/// still-uncovered strings, ties to the lexicographically first) sorted by name.
/// When every string is needed the result is all 3^n settings.
std::vector<LocalBases> compile_settings(const std::vector<Projector>& projectors, int n_qubits);

// ---- acquisition -----------------------------------------------------------

struct SettingCounts {
  LocalBases bases;
  std::uint64_t shots = 0;
  /// Outcome counts over the 2^n results. Integers when sampled; exact-mode
  /// records hold shots * probability.
  std::vector<double> counts;
  /// Valid-pattern mass the outcome distribution was renormalized from
  /// (1 for an exact state).
  double accepted = 1.0;
};

struct CountRecord {
  int n_qubits = 0;
  std::vector<SettingCounts> settings;
  std::uint64_t seed = 0;
  std::string provenance;

  const SettingCounts* find(const LocalBases& bases) const;
  void validate() const;
};

/// Born-rule source.
struct ExactSource {
  DensityMatrix rho;
};

/// Post-selected click patterns of a programmed layout under a noise model.
struct ModelSource {
  mesh::MeshLayout layout;
  noise::NoiseParams noise;
};

/// Previously recorded counts (e.g. laboratory data).
struct RecordSource {
  CountRecord record;
};

using Source = std::variant<ExactSource, ModelSource, RecordSource>;

struct AcquireOptions {
  std::uint64_t shots = 100000;
  std::uint64_t seed = 0;
  /// Store shots * probability instead of sampling (the shots -> infinity limit).
  bool exact = false;
};

/// Outcome probabilities below this are zeroed (then renormalized).
inline constexpr double kRoundoffProbability = 1e-15;

/// Outcome probabilities of one setting (valid patterns renormalized for
/// model sources). Throws AcquisitionError when no valid pattern has weight.
std::vector<double> setting_probabilities(const Source& source, int n_qubits, const LocalBases& bases,
                                          double* accepted = nullptr);

/// Generator for one setting: seeded from the master seed and the setting
/// name, so the counts of a setting do not depend on which others are measured.
std::uint64_t setting_stream_seed(std::uint64_t master_seed, const LocalBases& bases);

/// Multinomial draw by successive conditional binomials.
std::vector<double> sample_multinomial(std::span<const double> probabilities, std::uint64_t shots,
                                       std::uint64_t stream_seed);

/// Memoizing acquisition front end; repeated requests for a setting return
/// the same counts.
class Acquirer {
 public:
  Acquirer(Source source, int n_qubits, AcquireOptions options);

  int n_qubits() const { return n_qubits_; }
  const AcquireOptions& options() const { return options_; }
  const Source& source() const { return source_; }
  const SettingCounts& counts(const LocalBases& bases);
  CountRecord record(const std::vector<LocalBases>& settings);
  /// Per-mode detector efficiencies to correct counts with (model sources).
  std::vector<double> detector_efficiencies() const;

 private:
  Source source_;
  int n_qubits_;
  AcquireOptions options_;
  std::map<std::string, SettingCounts> cache_;
};

CountRecord acquire_counts(const ProjectorPlan& plan, const Source& source, const AcquireOptions& options);

// ---- estimation and reconstruction -----------------------------------------

/// Relative frequencies of one setting, after dividing each outcome by the
/// detection efficiency of its click pattern.
std::vector<double> setting_frequencies(const SettingCounts& counts, int n_qubits,
                                        std::span<const double> efficiencies = {});

struct ProjectorValues {
  std::vector<double> values;  // aligned with plan.projectors
  int clip_events = 0;
};

/// Diagonal projectors from the computational setting; the others as
/// sum_k alpha_k <P_k> with each Pauli expectation pooled over every recorded
/// setting covering it; results clipped to [0,1].
ProjectorValues estimate_projector_values(const ProjectorPlan& plan, const CountRecord& counts,
                                          std::span<const double> efficiencies = {});

struct MleOptions {
  int starts = 5;
  std::uint64_t seed = 0;
  double epsilon = 1e-6;
  int max_iterations = 5000;
};

struct MleDiagnostics {
  double objective = 0.0;
  int best_start = -1;
  int converged_starts = 0;
  int iterations = 0;
  std::vector<double> start_objectives;
  std::string termination;  // optimizer message of the chosen start
};

struct MleResult {
  DensityMatrix rho;
  MleDiagnostics diagnostics;
};

/// No start of the optimizer converged. Carries the best iterate.
class ReconstructionError : public Error {
 public:
  ReconstructionError(const std::string& what, MleResult best)
      : Error(what), best_(std::move(best)) {}
  const MleResult& best() const { return best_; }

 private:
  MleResult best_;
};

/// rho = T^dag T / tr(T^dag T), T lower triangular with real diagonal,
/// minimizing sum_nu (p_nu - f_nu)^2 / (2 max(p_nu, eps)) over the plan's
/// projectors, by dense BFGS from an identity start and seeded random starts.
MleResult mle_reconstruct(const ProjectorPlan& plan, std::span<const double> frequencies,
                          const MleOptions& options = {});

struct ThresholdMode {
  bool automatic = true;
  double t = 0.0;

  static ThresholdMode gini() { return {true, 0.0}; }
  static ThresholdMode fixed(double t) { return {false, t}; }
};

struct TqstDiagnostics {
  std::size_t n_t = 0;
  std::size_t n_0 = 0;
  std::size_t settings = 0;
  double threshold = 0.0;
  double gini = 0.0;
  double raw_diagonal_norm = 0.0;
  double discard_mass = 0.0;  // mean rejected fraction over the settings used
  int clip_events = 0;
  MleDiagnostics mle;
};

struct TqstResult {
  DensityMatrix rho;
  ProjectorPlan plan;
  DiagonalVector diagonal;
  TqstDiagnostics diagnostics;
};

/// Measures the diagonal, derives the threshold, builds the plan, acquires
/// the remaining settings and reconstructs.
TqstResult run_tqst(Acquirer& acquirer, ThresholdMode mode, const MleOptions& mle = {});
TqstResult run_qst(Acquirer& acquirer, const MleOptions& mle = {});

/// Reconstruction for a given plan with the acquirer's data.
TqstResult reconstruct(const ProjectorPlan& plan, Acquirer& acquirer, const MleOptions& mle = {});

/// Normalized diagonal measured in the computational setting.
DiagonalVector measure_diagonal(Acquirer& acquirer, double* raw_norm = nullptr);

}  // namespace tqst::tomo

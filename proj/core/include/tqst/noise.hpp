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
#include <vector>

#include "tqst/density_matrix.hpp"
#include "tqst/fock.hpp"
#include "tqst/mesh.hpp"
#include "tqst/stategen.hpp"
#include "tqst/types.hpp"

namespace tqst::noise {

/// Real symmetric matrix of pairwise internal-state overlaps S_ij with unit
/// diagonal, entries in [0,1], positive semi-definite.
struct GramMatrix {
  RealMatrix values;

  static GramMatrix all_ones(int n);
  static GramMatrix identity(int n);
  static GramMatrix uniform(int n, double overlap);

  int size() const { return static_cast<int>(values.rows()); }
  double operator()(int i, int j) const { return values(i, j); }

  /// Throws ModelError if any invariant fails.
  void validate() const;

  /// Adds one photon orthogonal to every existing photon.
  GramMatrix with_distinguishable_photon() const;
  GramMatrix restricted(std::span<const int> photons) const;
};

struct OverlapResult {
  GramMatrix gram;
  bool clipped = false;
};

/// S_ij = sqrt(M_ij), M_ij = (V_ij + g2) / (1 - g2), clipped to [0,1].
OverlapResult overlaps_from_visibilities(const RealMatrix& visibilities, double g2);

inline constexpr int kMaxDistinguishabilityPhotons = 6;

/// Probability of output configuration T for photons entering the given modes
/// (one entry per photon; repeats allowed) with internal overlaps S:
///   P(T) = (1 / prod t_j!) sum_{sigma,tau} prod_k S_{sigma(k) tau(k)}
///          U_{d_k, a_sigma(k)} conj(U_{d_k, a_tau(k)}) / <in|in>,
/// evaluated as sum_pi (prod_j S_{j,pi(j)}) per(M o conj(M P_pi)) over the
/// permutations pi with nonzero overlap weight.
double configuration_probability(const ComplexMatrix& u, const fock::AssignmentList& input_modes,
                                 const GramMatrix& s, const fock::FockConfig& output);

using Distribution = std::vector<std::pair<fock::FockConfig, double>>;

/// Full output distribution over every configuration (enumeration order of
/// fock::enumerate_configurations). Throws NumericalConsistencyError if an
/// imaginary residue survives.
Distribution partial_dist_distribution(const ComplexMatrix& u, const fock::FockConfig& input,
                                       const GramMatrix& s);
Distribution partial_dist_distribution(const ComplexMatrix& u,
                                       const fock::AssignmentList& input_modes,
                                       const GramMatrix& s);

struct EmissionProbabilities {
  double p0 = 0.0;
  double p1 = 1.0;
  double p2 = 0.0;
};

/// Solves g2 = 2 p2 / (p1 + 2 p2)^2 with p1 = 1 - p0 - p2.
EmissionProbabilities multiphoton_mixture(double g2, double p0);

struct CouplerOverride {
  int layer = 0;
  int top_mode = 0;
  mesh::CouplerSpec coupler;
};

inline constexpr std::uint64_t kLabCouplerSeed = 20250301;
inline constexpr double kLabG2 = 0.01;
inline constexpr double kLabVisibility = 0.90;
inline constexpr double kLabCouplerMin = 0.50;
inline constexpr double kLabCouplerMax = 0.58;

struct NoiseParams {
  double g2 = 0.0;
  double p0 = 0.0;
  /// Uniform pairwise visibility, used when `hom_visibilities` is empty.
  double hom_visibility = 1.0;
  RealMatrix hom_visibilities;
  double eta = 1.0;
  /// Per-mode detector efficiency; modes beyond the list detect perfectly.
  std::vector<double> detector_eff;
  std::optional<mesh::CouplerSpec> coupler_default;
  std::vector<CouplerOverride> coupler_overrides;

  static NoiseParams ideal() { return {}; }
  /// g2 = 0.01, V = 0.90 for every pair, every coupler of the 8-mode chip drawn
  /// from U[0.50, 0.58] with the given seed, no loss.
  static NoiseParams lab(std::uint64_t coupler_seed = kLabCouplerSeed);

  void validate() const;
  RealMatrix visibility_matrix(int n_photons) const;
  double detector_efficiency(int mode) const;
};

/// Copy of the layout with coupler reflectivities taken from the noise
/// parameters: per-cell override, else the global default, else unchanged.
mesh::MeshLayout apply_couplers(const mesh::MeshLayout& layout, const NoiseParams& np);

/// Bit j set when output mode j registered a click.
using ClickMask = std::uint32_t;

std::optional<std::uint64_t> click_pattern_to_basis_index(ClickMask mask,
                                                          const stategen::DualRailSpec& spec);
ClickMask basis_index_to_click_pattern(std::uint64_t index, const stategen::DualRailSpec& spec);

inline constexpr double kTruncationWarningLevel = 1e-4;

struct OutcomeDistribution {
  int modes = 0;
  /// Dual-rail-valid click patterns (one click per rail pair) only.
  std::map<ClickMask, double> patterns;
  /// Mass of modeled events that end in an invalid pattern, a lost photon or a
  /// missed detection: 1 - valid - truncated.
  double discarded = 0.0;
  /// Emission mass outside the model (two or more extra photons).
  double truncated = 0.0;
  bool truncation_warning = false;

  double valid_mass() const;
  /// Valid-pattern probabilities indexed by basis state (not renormalized).
  std::vector<double> basis_probabilities(const stategen::DualRailSpec& spec) const;
  /// Same, renormalized over the valid patterns. Throws ModelError when no
  /// valid pattern has weight.
  std::vector<double> normalized_basis_probabilities(const stategen::DualRailSpec& spec) const;
};

inline constexpr int kMaxModelQubits = 4;

/// Click-pattern distribution of the layout (as programmed, including its
/// measurement cells) under the noise model: the nominal n-photon emission
/// (weight p1^n) plus, for each source bin, one extra fully distinguishable
/// photon entering the same input mode (weight p1^(n-1) p2); uniform loss eta
/// before the circuit by enumerating surviving photon subsets; threshold
/// detectors with per-mode efficiency.
OutcomeDistribution noisy_event_distribution(const mesh::MeshLayout& layout,
                                             const stategen::DualRailSpec& spec,
                                             const NoiseParams& np);

/// Linear-inversion model predictions whose most negative eigenvalue is below
/// this are rejected as inconsistent.
inline constexpr double kModelInconsistencyTolerance = 0.05;

struct ModelPrediction {
  DensityMatrix rho;
  double min_eigenvalue = 0.0;  // before PSD projection
  double truncated = 0.0;
  bool truncation_warning = false;
};

/// Runs the noise model for every one of the 3^n local Pauli settings and
/// linearly inverts the setting distributions (renormalized over valid
/// patterns) into rho, then clips negative eigenvalues and renormalizes.
ModelPrediction predicted_density_matrix(const mesh::MeshLayout& layout,
                                         const stategen::DualRailSpec& spec,
                                         const NoiseParams& np);

/// Divides each pattern's count by the product of efficiencies of its clicked modes.
std::map<ClickMask, double> apply_detector_correction(const std::map<ClickMask, double>& counts,
                                                      std::span<const double> efficiencies);

}  // namespace tqst::noise

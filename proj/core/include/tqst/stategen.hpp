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
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "tqst/fock.hpp"
#include "tqst/mesh.hpp"
#include "tqst/types.hpp"

namespace tqst::stategen {

/// Qubit l lives on rails (2l, 2l+1) of an m-mode circuit: a photon in the
/// first rail is |0>, in the second |1>. Qubit 0 is the most significant bit.
struct DualRailSpec {
  int n_qubits = 1;
  int modes = 2;

  static DualRailSpec for_qubits(int n_qubits, int modes = 0);
  std::pair<int, int> rails(int qubit) const { return {2 * qubit, 2 * qubit + 1}; }
  std::size_t dimension() const { return std::size_t{1} << n_qubits; }
  void validate() const;
};

struct QubitState {
  int n_qubits = 0;
  ComplexVector amplitudes;

  RealVector populations() const { return amplitudes.cwiseAbs2(); }
};

/// One photon in the top rail of every qubit: modes 0, 2, 4, ...
fock::FockConfig dual_rail_input(int n_qubits, int modes = 0);

/// Basis index of a dual-rail-valid output configuration, nullopt otherwise.
std::optional<std::uint64_t> fock_to_basis_index(const fock::FockConfig& config,
                                                 const DualRailSpec& spec);
fock::FockConfig basis_to_fock(std::uint64_t index, const DualRailSpec& spec);

inline constexpr double kDefaultPostselectionFloor = 1e-12;

struct PostselectResult {
  QubitState state;
  double probability = 0.0;
};

/// Post-selected state c_T = beta_{S->T} / sqrt(p) over the 2^n dual-rail
/// outputs, p = sum |beta|^2. Throws DegeneratePostselectionError when
/// p < floor.
PostselectResult postselect(const ComplexMatrix& u, const DualRailSpec& spec,
                            double floor = kDefaultPostselectionFloor);

/// postselect(prepared_unitary(layout)) with a spec sized to the layout.
PostselectResult prepare_state(const mesh::MeshLayout& layout, int n_qubits,
                               double floor = kDefaultPostselectionFloor);

/// Textbook target vectors of the preset families.
ComplexVector ideal_state(mesh::PresetKind kind);

struct SweepEntry {
  std::uint64_t seed = 0;
  mesh::MeshLayout layout;
  QubitState state;
  double probability = 0.0;
  double gini = 0.0;
};

struct SweepResult {
  int n_qubits = 0;
  std::vector<SweepEntry> entries;  // ascending gini
  double gini_min = 0.0;            // over the pool
  double gini_max = 0.0;
  double grid_spacing = 0.0;
  double max_grid_deviation = 0.0;  // max |gini - grid point| over the selection
  int pool = 0;
  int skipped = 0;                  // pool layouts rejected by the post-selection floor
};

inline constexpr int kDefaultPoolFactor = 50;

/// Draws `pool` random layouts (seeds derived from `seed`), evaluates the Gini
/// index of each post-selected state's populations, then greedily picks the
/// candidate closest to each point of an equally spaced grid between the
/// pool's min and max Gini, without replacement. pool <= 0 selects
/// kDefaultPoolFactor * n_states.
SweepResult random_sweep(int n_qubits, int n_states, int pool, std::uint64_t seed);

/// CSV: index,gini,p,re_0..re_{N-1},im_0..im_{N-1}.
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

}  // namespace tqst::stategen

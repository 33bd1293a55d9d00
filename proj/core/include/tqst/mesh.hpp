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
#include <span>
#include <string>
#include <vector>

#include "tqst/types.hpp"

namespace tqst::mesh {

/// Phase settings of one reconfigurable beam splitter acting on the adjacent
/// modes (top_mode, top_mode + 1).
struct RBSParams {
  double theta = 0.0;
  double phi = 0.0;
  int top_mode = 0;
};

/// Reflectivities of the two directional couplers inside one cell; t_i = 1 - r_i.
struct CouplerSpec {
  double r1 = 0.5;
  double r2 = 0.5;
  friend bool operator==(const CouplerSpec&, const CouplerSpec&) = default;
};

enum class CellRole { generation, measurement, identity };

struct Cell {
  int layer = 0;
  RBSParams rbs;
  CouplerSpec coupler;
  CellRole role = CellRole::identity;
};

struct MeshLayout {
  int modes = 0;
  std::vector<Cell> cells;
};

// Geometry of the 8-mode processor: six generation layers followed by the
// measurement layer, on a rectangular mesh whose even layers act on the
// pairs (0,1),(2,3),... and odd layers on (1,2),(3,4),...
inline constexpr int kChipModes = 8;
inline constexpr int kChipLayers = 8;
inline constexpr int kGenerationLayers = 6;
inline constexpr int kMeasurementLayer = 6;

/// Presets occupy the topmost contiguous modes of the chip.
inline constexpr int kPresetModeOffset = 0;

/// The tunable relative phase of Bell/GHZ presets sits on phi of the
/// layer-1 swap cell at modes (1,2); 0 yields the '+' superposition.
inline constexpr int kEntanglerPhaseLayer = 1;
inline constexpr int kEntanglerPhaseTopMode = 1;
inline constexpr double kEntanglerPhase = 0.0;

inline constexpr double kW3PhaseShiftA = 2.618002;
inline constexpr double kW3PhaseShiftC = -2.094406;

/// Ideal cell: [[e^{i phi} sin(theta/2), cos(theta/2)], [e^{i phi} cos(theta/2), -sin(theta/2)]].
Eigen::Matrix2cd rbs_unitary(double theta, double phi);

/// Mach-Zehnder cell built from its parts: phase phi on the top mode, coupler
/// r1, phase theta on the top mode, coupler r2, with couplers written as
/// [[sqrt r, i sqrt t], [i sqrt t, sqrt r]]. The product is multiplied by
/// -i e^{-i theta/2} so that balanced couplers give rbs_unitary exactly.
Eigen::Matrix2cd rbs_unitary_physical(double theta, double phi, const CouplerSpec& coupler);

/// R = |U_00|^2, the probability of staying in the input mode. Equals
/// sin^2(theta/2) for the ideal cell.
double reflectivity(const Eigen::Matrix2cd& cell);

struct ReflectivityBounds {
  double min = 0.0;
  double max = 1.0;
};
ReflectivityBounds reflectivity_bounds(const CouplerSpec& coupler);

/// Throws LayoutError on out-of-range cells, overlapping cells in one layer or
/// invalid coupler reflectivities.
void validate(const MeshLayout& layout);

/// Product of every non-identity cell (physical form, using each cell's
/// coupler spec) in layer order. Identity-tagged cells contribute I.
ComplexMatrix compose_mesh(const MeshLayout& layout);

/// Rectangular universal geometry with `layers` layers, every cell tagged
/// identity. rectangular_layout(8, 8) has 28 cells.
MeshLayout rectangular_layout(int modes, int layers);

Cell* find_cell(MeshLayout& layout, int layer, int top_mode);
const Cell* find_cell(const MeshLayout& layout, int layer, int top_mode);

enum class PresetKind { bell_psi_plus, ghz3, w3, ghz4, random };

struct PresetStateId {
  PresetKind kind = PresetKind::bell_psi_plus;
  int n_qubits = 2;
  std::uint64_t seed = 0;

  static PresetStateId bell_psi_plus() { return {PresetKind::bell_psi_plus, 2, 0}; }
  static PresetStateId ghz3() { return {PresetKind::ghz3, 3, 0}; }
  static PresetStateId w3() { return {PresetKind::w3, 3, 0}; }
  static PresetStateId ghz4() { return {PresetKind::ghz4, 4, 0}; }
  static PresetStateId random(int n_qubits, std::uint64_t seed) {
    return {PresetKind::random, n_qubits, seed};
  }
};

std::string preset_name(PresetKind kind);
/// Accepts "BELL_PSI_PLUS", "GHZ3", "W3", "GHZ4", "RANDOM" (case-insensitive).
PresetKind parse_preset(const std::string& name);

/// Full 8-mode chip layout for a preset state. Measurement-layer cells on the
/// used rail pairs are tagged measurement and store the computational-basis
/// setting (theta = pi) with their phi acting as a phase offset on the top
/// rail; W3 carries its two extra phase shifts there. Random presets draw
/// theta, phi ~ U[0, 2pi) for the generation cells of the 2n-mode universal
/// sub-mesh (restricted to the six generation layers).
MeshLayout preset_layout(const PresetStateId& id);

/// Local measurement basis of one qubit.
enum class Basis { X, Y, Z };
char basis_letter(Basis b);
Basis parse_basis(char c);

/// RBS parameters that map the +1 (-1) eigenstate of `basis` onto the top
/// (bottom) rail.
RBSParams basis_rotation(Basis basis);

/// Copy of `layout` with the measurement cell of qubit l programmed to
/// bases[l]: theta from basis_rotation, phi = basis phi + stored offset.
MeshLayout program_measurement(const MeshLayout& layout, std::span<const Basis> bases);

/// Unitary that prepares the state: generation cells followed by the stored
/// measurement-cell phase offsets applied as pure phases on the top rails.
ComplexMatrix prepared_unitary(const MeshLayout& layout);

}  // namespace tqst::mesh

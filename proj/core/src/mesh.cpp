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

#include "tqst/mesh.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "tqst/error.hpp"

namespace tqst::mesh {

namespace {

const Complex kI{0.0, 1.0};

// W3 generation settings, indexed layer-major and top-to-bottom over the 15
// cells of the 6-mode universal sub-mesh.
constexpr std::array<double, 15> kW3Theta = {
    3.141592, 3.141592, 1.570796, 3.141592, 1.230959, 1.570796, 3.141592, 1.570796,
    1.230959, 3.141592, 1.570796, 0.0,      3.141592, 0.0,      0.0};
constexpr std::array<double, 15> kW3Phi = {
    0.0, 0.0, 0.0, 0.0, 3.141592, 2.094402, 0.0, 4.712389,
    2.094388, 2.094402, 0.523596, 0.0, 0.0, 0.0, 0.0};

Eigen::Matrix2cd coupler(double r) {
  const double sr = std::sqrt(r);
  const double st = std::sqrt(1.0 - r);
  Eigen::Matrix2cd c;
  c << sr, kI * st, kI * st, sr;
  return c;
}

Eigen::Matrix2cd top_phase(double angle) {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Identity();
  p(0, 0) = std::polar(1.0, angle);
  return p;
}

// Left-multiplies rows (a, a+1) of u by the 2x2 block.
void apply_block(ComplexMatrix& u, int a, const Eigen::Matrix2cd& block) {
  const Eigen::RowVectorXcd top = u.row(a);
  const Eigen::RowVectorXcd bottom = u.row(a + 1);
  u.row(a) = block(0, 0) * top + block(0, 1) * bottom;
  u.row(a + 1) = block(1, 0) * top + block(1, 1) * bottom;
}

std::vector<const Cell*> cells_in_layer_order(const MeshLayout& layout) {
  std::vector<const Cell*> ordered;
  ordered.reserve(layout.cells.size());
  for (const auto& c : layout.cells) ordered.push_back(&c);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Cell* a, const Cell* b) { return a->layer < b->layer; });
  return ordered;
}

Cell* measurement_cell(MeshLayout& layout, int top_mode) {
  for (auto& c : layout.cells) {
    if (c.role == CellRole::measurement && c.rbs.top_mode == top_mode) return &c;
  }
  return nullptr;
}

void set_cell(MeshLayout& layout, int layer, int top_mode, double theta, double phi,
              CellRole role) {
  Cell* c = find_cell(layout, layer, top_mode);
  if (c == nullptr) throw LayoutError("preset refers to a cell outside the chip geometry");
  c->rbs.theta = theta;
  c->rbs.phi = phi;
  c->role = role;
}

MeshLayout chip_with_measurement(int n_qubits) {
  MeshLayout layout = rectangular_layout(kChipModes, kChipLayers);
  for (int l = 0; l < n_qubits; ++l) {
    set_cell(layout, kMeasurementLayer, kPresetModeOffset + 2 * l, kPi, 0.0, CellRole::measurement);
  }
  return layout;
}

// First layer balanced splitters on every rail pair, second layer swaps
// between neighbouring pairs; post-selection leaves (|0101..> + |1010..>)/sqrt2.
MeshLayout entangler_layout(int n_qubits) {
  MeshLayout layout = chip_with_measurement(n_qubits);
  for (int l = 0; l < n_qubits; ++l) {
    set_cell(layout, 0, kPresetModeOffset + 2 * l, kPi / 2.0, 0.0, CellRole::generation);
  }
  for (int l = 0; l + 1 < n_qubits; ++l) {
    const int top = kPresetModeOffset + 2 * l + 1;
    const double phi = (top == kEntanglerPhaseTopMode) ? kEntanglerPhase : 0.0;
    set_cell(layout, kEntanglerPhaseLayer, top, 0.0, phi, CellRole::generation);
  }
  return layout;
}

// Cells of the universal sub-mesh on the top `active_modes` modes, in layer-major,
// top-to-bottom order.
std::vector<Cell*> submesh_cells(MeshLayout& layout, int active_modes) {
  const int layers = std::min(active_modes, kGenerationLayers);
  std::vector<Cell*> out;
  for (int layer = 0; layer < layers; ++layer) {
    for (int top = layer % 2; top + 1 < active_modes; top += 2) {
      Cell* c = find_cell(layout, layer, kPresetModeOffset + top);
      if (c != nullptr) out.push_back(c);
    }
  }
  return out;
}

}  // namespace

Eigen::Matrix2cd rbs_unitary(double theta, double phi) {
  const Complex e = std::polar(1.0, phi);
  const double s = std::sin(theta / 2.0);
  const double c = std::cos(theta / 2.0);
  Eigen::Matrix2cd u;
  u << e * s, c, e * c, -s;
  return u;
}

Eigen::Matrix2cd rbs_unitary_physical(double theta, double phi, const CouplerSpec& coupler_spec) {
  const Eigen::Matrix2cd m =
      coupler(coupler_spec.r2) * top_phase(theta) * coupler(coupler_spec.r1) * top_phase(phi);
  return (-kI * std::polar(1.0, -theta / 2.0)) * m;
}

double reflectivity(const Eigen::Matrix2cd& cell) { return std::norm(cell(0, 0)); }

ReflectivityBounds reflectivity_bounds(const CouplerSpec& c) {
  const double t1 = 1.0 - c.r1;
  const double t2 = 1.0 - c.r2;
  const double base = c.r1 * c.r2 + t1 * t2;
  const double cross = 2.0 * std::sqrt(c.r1 * c.r2 * t1 * t2);
  return {std::clamp(base - cross, 0.0, 1.0), std::clamp(base + cross, 0.0, 1.0)};
}

void validate(const MeshLayout& layout) {
  if (layout.modes < 1) throw LayoutError("layout needs at least one mode");
  std::set<std::pair<int, int>> used;  // (layer, mode)
  for (const auto& c : layout.cells) {
    const int a = c.rbs.top_mode;
    if (a < 0 || a + 1 >= layout.modes) {
      throw LayoutError("cell on modes (" + std::to_string(a) + "," + std::to_string(a + 1) +
                        ") lies outside a " + std::to_string(layout.modes) + "-mode layout");
    }
    if (c.layer < 0) throw LayoutError("negative layer index");
    for (double r : {c.coupler.r1, c.coupler.r2}) {
      if (!(r >= 0.0 && r <= 1.0)) throw LayoutError("coupler reflectivity outside [0,1]");
    }
    if (!std::isfinite(c.rbs.theta) || !std::isfinite(c.rbs.phi)) {
      throw LayoutError("non-finite cell phase");
    }
    for (int mode : {a, a + 1}) {
      if (!used.emplace(c.layer, mode).second) {
        throw LayoutError("cells overlap on mode " + std::to_string(mode) + " in layer " +
                          std::to_string(c.layer));
      }
    }
  }
}

ComplexMatrix compose_mesh(const MeshLayout& layout) {
  validate(layout);
  ComplexMatrix u = ComplexMatrix::Identity(layout.modes, layout.modes);
  for (const Cell* c : cells_in_layer_order(layout)) {
    if (c->role == CellRole::identity) continue;
    apply_block(u, c->rbs.top_mode, rbs_unitary_physical(c->rbs.theta, c->rbs.phi, c->coupler));
  }
  return u;
}

MeshLayout rectangular_layout(int modes, int layers) {
  if (modes < 1 || layers < 0) throw LayoutError("rectangular_layout: bad dimensions");
  MeshLayout layout;
  layout.modes = modes;
  for (int layer = 0; layer < layers; ++layer) {
    for (int top = layer % 2; top + 1 < modes; top += 2) {
      Cell c;
      c.layer = layer;
      c.rbs.top_mode = top;
      c.rbs.theta = kPi;
      c.role = CellRole::identity;
      layout.cells.push_back(c);
    }
  }
  return layout;
}

Cell* find_cell(MeshLayout& layout, int layer, int top_mode) {
  for (auto& c : layout.cells) {
    if (c.layer == layer && c.rbs.top_mode == top_mode) return &c;
  }
  return nullptr;
}

const Cell* find_cell(const MeshLayout& layout, int layer, int top_mode) {
  for (const auto& c : layout.cells) {
    if (c.layer == layer && c.rbs.top_mode == top_mode) return &c;
  }
  return nullptr;
}

std::string preset_name(PresetKind kind) {
  switch (kind) {
    case PresetKind::bell_psi_plus: return "BELL_PSI_PLUS";
    case PresetKind::ghz3: return "GHZ3";
    case PresetKind::w3: return "W3";
    case PresetKind::ghz4: return "GHZ4";
    case PresetKind::random: return "RANDOM";
  }
  return "UNKNOWN";
}

PresetKind parse_preset(const std::string& name) {
  std::string upper;
  for (char ch : name) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  if (upper == "BELL_PSI_PLUS" || upper == "PSI_PLUS" || upper == "BELL") return PresetKind::bell_psi_plus;
  if (upper == "GHZ3") return PresetKind::ghz3;
  if (upper == "W3") return PresetKind::w3;
  if (upper == "GHZ4") return PresetKind::ghz4;
  if (upper == "RANDOM") return PresetKind::random;
  throw ParameterError("unknown preset '" + name + "'");
}

MeshLayout preset_layout(const PresetStateId& id) {
  switch (id.kind) {
    case PresetKind::bell_psi_plus:
    case PresetKind::ghz3:
    case PresetKind::ghz4: {
      const int expected = id.kind == PresetKind::bell_psi_plus ? 2 : id.kind == PresetKind::ghz3 ? 3 : 4;
      if (id.n_qubits != expected) throw ParameterError("preset qubit count mismatch");
      return entangler_layout(expected);
    }
    case PresetKind::w3: {
      if (id.n_qubits != 3) throw ParameterError("preset qubit count mismatch");
      MeshLayout layout = chip_with_measurement(3);
      const auto cells = submesh_cells(layout, 6);
      for (std::size_t k = 0; k < cells.size(); ++k) {
        cells[k]->rbs.theta = kW3Theta[k];
        cells[k]->rbs.phi = kW3Phi[k];
        cells[k]->role = CellRole::generation;
      }
      measurement_cell(layout, kPresetModeOffset + 0)->rbs.phi = kW3PhaseShiftA;
      measurement_cell(layout, kPresetModeOffset + 4)->rbs.phi = kW3PhaseShiftC;
      return layout;
    }
    case PresetKind::random: {
      if (id.n_qubits < 1 || 2 * id.n_qubits > kChipModes) {
        throw ParameterError("random preset needs 1..4 qubits");
      }
      MeshLayout layout = chip_with_measurement(id.n_qubits);
      std::mt19937_64 rng(id.seed);
      std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
      for (Cell* c : submesh_cells(layout, 2 * id.n_qubits)) {
        c->rbs.theta = angle(rng);
        c->rbs.phi = angle(rng);
        c->role = CellRole::generation;
      }
      return layout;
    }
  }
  throw ParameterError("unknown preset id");
}

char basis_letter(Basis b) {
  switch (b) {
    case Basis::X: return 'X';
    case Basis::Y: return 'Y';
    case Basis::Z: return 'Z';
  }
  return '?';
}

Basis parse_basis(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'X': return Basis::X;
    case 'Y': return Basis::Y;
    case 'Z': return Basis::Z;
    default: throw ParameterError(std::string("unknown measurement basis '") + c + "'");
  }
}

RBSParams basis_rotation(Basis basis) {
  // Rows of rbs_unitary are the measured bras: theta = pi gives <0|, <1|;
  // theta = pi/2 gives <+|, <-| at phi = 0 and <+i|, <-i| at phi = pi/2.
  switch (basis) {
    case Basis::Z: return {kPi, 0.0, 0};
    case Basis::X: return {kPi / 2.0, 0.0, 0};
    case Basis::Y: return {kPi / 2.0, kPi / 2.0, 0};
  }
  return {};
}

MeshLayout program_measurement(const MeshLayout& layout, std::span<const Basis> bases) {
  MeshLayout out = layout;
  int next_layer = 0;
  for (const auto& c : out.cells) next_layer = std::max(next_layer, c.layer + 1);
  for (std::size_t l = 0; l < bases.size(); ++l) {
    const int top = kPresetModeOffset + 2 * static_cast<int>(l);
    Cell* cell = measurement_cell(out, top);
    if (cell == nullptr) {
      Cell added;
      added.layer = next_layer;
      added.rbs.top_mode = top;
      added.rbs.phi = 0.0;
      added.role = CellRole::measurement;
      out.cells.push_back(added);
      cell = &out.cells.back();
    }
    const RBSParams rot = basis_rotation(bases[l]);
    cell->rbs.theta = rot.theta;
    cell->rbs.phi = rot.phi + cell->rbs.phi;
  }
  return out;
}

ComplexMatrix prepared_unitary(const MeshLayout& layout) {
  validate(layout);
  ComplexMatrix u = ComplexMatrix::Identity(layout.modes, layout.modes);
  for (const Cell* c : cells_in_layer_order(layout)) {
    if (c->role == CellRole::generation) {
      apply_block(u, c->rbs.top_mode, rbs_unitary_physical(c->rbs.theta, c->rbs.phi, c->coupler));
    } else if (c->role == CellRole::measurement) {
      u.row(c->rbs.top_mode) *= std::polar(1.0, c->rbs.phi);
    }
  }
  return u;
}

}  // namespace tqst::mesh

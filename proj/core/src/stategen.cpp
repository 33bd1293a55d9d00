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

#include "tqst/stategen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "tqst/error.hpp"
#include "tqst/io.hpp"
#include "tqst/sparsity.hpp"

namespace tqst::stategen {

DualRailSpec DualRailSpec::for_qubits(int n_qubits, int modes) {
  DualRailSpec spec{n_qubits, modes > 0 ? modes : 2 * n_qubits};
  spec.validate();
  return spec;
}

void DualRailSpec::validate() const {
  if (n_qubits < 1) throw ContractError("dual-rail spec needs at least one qubit");
  if (n_qubits > 8) throw SizeError("dual-rail spec supports at most 8 qubits");
  if (2 * n_qubits > modes) throw ContractError("dual-rail spec needs 2n <= m");
}

fock::FockConfig dual_rail_input(int n_qubits, int modes) {
  const auto spec = DualRailSpec::for_qubits(n_qubits, modes);
  std::vector<int> occ(static_cast<std::size_t>(spec.modes), 0);
  for (int l = 0; l < n_qubits; ++l) occ[static_cast<std::size_t>(2 * l)] = 1;
  return fock::FockConfig(std::move(occ));
}

std::optional<std::uint64_t> fock_to_basis_index(const fock::FockConfig& config,
                                                 const DualRailSpec& spec) {
  if (config.modes() < 2 * spec.n_qubits) return std::nullopt;
  std::uint64_t index = 0;
  for (int l = 0; l < spec.n_qubits; ++l) {
    const int top = config[2 * l];
    const int bottom = config[2 * l + 1];
    if (top + bottom != 1) return std::nullopt;
    index = (index << 1) | static_cast<std::uint64_t>(bottom);
  }
  for (int j = 2 * spec.n_qubits; j < config.modes(); ++j) {
    if (config[j] != 0) return std::nullopt;
  }
  return index;
}

fock::FockConfig basis_to_fock(std::uint64_t index, const DualRailSpec& spec) {
  std::vector<int> occ(static_cast<std::size_t>(spec.modes), 0);
  for (int l = 0; l < spec.n_qubits; ++l) {
    const auto bit = (index >> (spec.n_qubits - 1 - l)) & 1U;
    occ[static_cast<std::size_t>(2 * l + static_cast<int>(bit))] = 1;
  }
  return fock::FockConfig(std::move(occ));
}

PostselectResult postselect(const ComplexMatrix& u, const DualRailSpec& spec, double floor) {
  spec.validate();
  if (u.rows() != spec.modes || u.cols() != spec.modes) {
    throw ShapeError("postselect: U is " + std::to_string(u.rows()) + "x" +
                     std::to_string(u.cols()) + ", spec has " + std::to_string(spec.modes) +
                     " modes");
  }
  const auto input = dual_rail_input(spec.n_qubits, spec.modes);
  const auto dim = static_cast<Eigen::Index>(spec.dimension());
  ComplexVector beta(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    beta(idx) = fock::transition_amplitude(u, input, basis_to_fock(static_cast<std::uint64_t>(idx), spec));
  }
  const double p = beta.squaredNorm();
  if (!(p >= floor)) {
    throw DegeneratePostselectionError("post-selection probability " + std::to_string(p) +
                                       " is below the floor");
  }
  PostselectResult out;
  out.state.n_qubits = spec.n_qubits;
  out.state.amplitudes = beta / std::sqrt(p);
  out.probability = p;
  return out;
}

PostselectResult prepare_state(const mesh::MeshLayout& layout, int n_qubits, double floor) {
  const auto spec = DualRailSpec::for_qubits(n_qubits, layout.modes);
  return postselect(mesh::prepared_unitary(layout), spec, floor);
}

ComplexVector ideal_state(mesh::PresetKind kind) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case mesh::PresetKind::bell_psi_plus: {
      ComplexVector v = ComplexVector::Zero(4);
      v(0b01) = h;
      v(0b10) = h;
      return v;
    }
    case mesh::PresetKind::ghz3: {
      ComplexVector v = ComplexVector::Zero(8);
      v(0b010) = h;
      v(0b101) = h;
      return v;
    }
    case mesh::PresetKind::w3: {
      ComplexVector v = ComplexVector::Zero(8);
      const double w = 1.0 / std::sqrt(3.0);
      v(0b100) = w;
      v(0b010) = w;
      v(0b001) = w;
      return v;
    }
    case mesh::PresetKind::ghz4: {
      ComplexVector v = ComplexVector::Zero(16);
      v(0b0101) = h;
      v(0b1010) = h;
      return v;
    }
    case mesh::PresetKind::random: break;
  }
  throw ParameterError("random presets have no textbook target");
}

SweepResult random_sweep(int n_qubits, int n_states, int pool, std::uint64_t seed) {
  if (n_states < 1) throw ContractError("random_sweep: n_states must be >= 1");
  if (pool <= 0) pool = kDefaultPoolFactor * n_states;
  if (pool < n_states) throw ContractError("random_sweep: pool must be >= n_states");

  // Per-candidate layout seeds come from one generator seeded with the sweep seed.
  std::mt19937_64 seeder(seed);
  std::vector<SweepEntry> candidates;
  candidates.reserve(static_cast<std::size_t>(pool));
  int skipped = 0;
  for (int k = 0; k < pool; ++k) {
    SweepEntry e;
    e.seed = seeder();
    e.layout = mesh::preset_layout(mesh::PresetStateId::random(n_qubits, e.seed));
    try {
      auto ps = prepare_state(e.layout, n_qubits);
      e.state = std::move(ps.state);
      e.probability = ps.probability;
    } catch (const DegeneratePostselectionError&) {
      ++skipped;
      continue;
    }
    const RealVector pops = e.state.populations();
    e.gini = tomo::gini_index(std::span<const double>(pops.data(), static_cast<std::size_t>(pops.size())));
    candidates.push_back(std::move(e));
  }
  if (static_cast<int>(candidates.size()) < n_states) {
    throw SweepError("random_sweep: only " + std::to_string(candidates.size()) +
                     " usable layouts in the pool");
  }

  double gmin = std::numeric_limits<double>::infinity();
  double gmax = -gmin;
  for (const auto& c : candidates) {
    gmin = std::min(gmin, c.gini);
    gmax = std::max(gmax, c.gini);
  }
  if (n_states > 1 && !(gmax - gmin > 1e-12)) {
    throw SweepError("random_sweep: every pool state has the same Gini index");
  }

  SweepResult result;
  result.n_qubits = n_qubits;
  result.gini_min = gmin;
  result.gini_max = gmax;
  result.pool = pool;
  result.skipped = skipped;
  result.grid_spacing = n_states > 1 ? (gmax - gmin) / (n_states - 1) : 0.0;

  std::vector<bool> used(candidates.size(), false);
  for (int g = 0; g < n_states; ++g) {
    const double target = gmin + result.grid_spacing * g;
    std::size_t best = candidates.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(candidates[k].gini - target);
      if (d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
    used[best] = true;
    result.max_grid_deviation = std::max(result.max_grid_deviation, best_dist);
    result.entries.push_back(candidates[best]);
  }
  std::stable_sort(result.entries.begin(), result.entries.end(),
                   [](const SweepEntry& a, const SweepEntry& b) { return a.gini < b.gini; });
  for (std::size_t k = 1; k < result.entries.size(); ++k) {
    if (!(result.entries[k].gini > result.entries[k - 1].gini)) {
      throw SweepError("random_sweep: selected Gini values are not strictly increasing; enlarge the pool");
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  const std::size_t dim = std::size_t{1} << sweep.n_qubits;
  os << "index,gini,p";
  for (std::size_t i = 0; i < dim; ++i) os << ",re_" << i;
  for (std::size_t i = 0; i < dim; ++i) os << ",im_" << i;
  os << '\n';
  for (std::size_t k = 0; k < sweep.entries.size(); ++k) {
    const auto& e = sweep.entries[k];
    os << k << ',' << io::format_double(e.gini) << ',' << io::format_double(e.probability);
    for (Eigen::Index i = 0; i < e.state.amplitudes.size(); ++i) {
      os << ',' << io::format_double(e.state.amplitudes(i).real());
    }
    for (Eigen::Index i = 0; i < e.state.amplitudes.size(); ++i) {
      os << ',' << io::format_double(e.state.amplitudes(i).imag());
    }
    os << '\n';
  }
}

}  // namespace tqst::stategen

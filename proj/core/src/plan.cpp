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
#include <cmath>
#include <string>

#include "tqst/tomo.hpp"

namespace tqst::tomo {

namespace {

std::uint64_t string_code(const PauliString& s) {
  std::uint64_t code = 0;
  for (auto p : s) code = code * 4 + static_cast<std::uint64_t>(p);
  return code;
}

Pauli pauli_of(mesh::Basis b) {
  switch (b) {
    case mesh::Basis::X: return Pauli::X;
    case mesh::Basis::Y: return Pauli::Y;
    case mesh::Basis::Z: break;
  }
  return Pauli::Z;
}

mesh::Basis basis_of(Pauli p) {
  switch (p) {
    case Pauli::X: return mesh::Basis::X;
    case Pauli::Y: return mesh::Basis::Y;
    default: break;
  }
  return mesh::Basis::Z;
}

// Codes of the 2^n strings a setting reveals (every subset of its letters).
std::vector<std::uint64_t> revealed_codes(const LocalBases& bases) {
  const int n = static_cast<int>(bases.size());
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    std::uint64_t code = 0;
    for (int l = 0; l < n; ++l) {
      const auto p = ((mask >> l) & 1U) ? pauli_of(bases[static_cast<std::size_t>(l)]) : Pauli::I;
      code = code * 4 + static_cast<std::uint64_t>(p);
    }
    out.push_back(code);
  }
  return out;
}

void check_qubits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 8) throw SizeError("tomography supports 1 to 8 qubits");
}

}  // namespace

ComplexVector Projector::state(int n_qubits) const {
  const auto dim = Eigen::Index{1} << n_qubits;
  ComplexVector v = ComplexVector::Zero(dim);
  const double h = 1.0 / std::sqrt(2.0);
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  switch (kind) {
    case ProjectorKind::diagonal: v(a) = 1.0; break;
    case ProjectorKind::real_part: v(a) = h; v(b) = h; break;
    case ProjectorKind::imag_part: v(a) = h; v(b) = Complex{0.0, h}; break;
  }
  return v;
}

Projector make_projector(ProjectorKind kind, std::size_t i, std::size_t j, int n_qubits) {
  Projector p{kind, i, kind == ProjectorKind::diagonal ? i : j, {}};
  if (kind == ProjectorKind::diagonal) {
    p.terms = merge_terms(decompose_outer(i, i, n_qubits));
    return p;
  }
  if (!(i < j)) throw ContractError("off-diagonal projector needs i < j");
  std::vector<PauliTerm> all;
  auto add = [&](std::uint64_t a, std::uint64_t b, Complex c) {
    for (auto t : decompose_outer(a, b, n_qubits)) {
      t.coefficient *= c;
      all.push_back(std::move(t));
    }
  };
  add(i, i, 0.5);
  add(j, j, 0.5);
  if (kind == ProjectorKind::real_part) {
    add(i, j, 0.5);
    add(j, i, 0.5);
  } else {
    add(i, j, Complex{0.0, -0.5});
    add(j, i, Complex{0.0, 0.5});
  }
  p.terms = merge_terms(all);
  return p;
}

std::vector<LocalBases> compile_settings(const std::vector<Projector>& projectors, int n_qubits) {
  check_qubits(n_qubits);
  const auto n = static_cast<std::size_t>(n_qubits);
  std::vector<PauliString> needed;
  std::vector<bool> seen(std::size_t{1} << (2 * n), false);
  for (const auto& p : projectors) {
    for (const auto& t : p.terms) {
      const auto code = string_code(t.string);
      if (!seen[code]) {
        seen[code] = true;
        needed.push_back(t.string);
      }
    }
  }

  const LocalBases computational = computational_setting(n_qubits);
  std::vector<bool> covered(seen.size(), false);
  auto take = [&](const LocalBases& s) {
    for (auto c : revealed_codes(s)) covered[c] = true;
  };
  take(computational);
  std::vector<LocalBases> chosen;

  // A string without identities is revealed only by its own setting.
  for (const auto& s : needed) {
    if (covered[string_code(s)]) continue;
    if (std::none_of(s.begin(), s.end(), [](Pauli p) { return p == Pauli::I; })) {
      LocalBases b(n);
      for (std::size_t l = 0; l < n; ++l) b[l] = basis_of(s[l]);
      chosen.push_back(b);
      take(b);
    }
  }

  const auto candidates = all_settings(n_qubits);
  for (;;) {
    std::vector<std::uint64_t> open;
    for (const auto& s : needed) {
      const auto code = string_code(s);
      if (!covered[code]) open.push_back(code);
    }
    if (open.empty()) break;
    std::vector<bool> is_open(seen.size(), false);
    for (auto c : open) is_open[c] = true;
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      std::size_t gain = 0;
      for (auto c : revealed_codes(candidates[k])) gain += is_open[c] ? 1 : 0;
      if (gain > best_gain) {
        best_gain = gain;
        best = k;
      }
    }
    chosen.push_back(candidates[best]);
    take(candidates[best]);
  }

  std::sort(chosen.begin(), chosen.end(),
            [](const LocalBases& a, const LocalBases& b) { return to_string(a) < to_string(b); });
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  std::erase(chosen, computational);
  chosen.insert(chosen.begin(), computational);
  return chosen;
}

ProjectorPlan build_plan_for_pairs(std::vector<IndexPair> pairs, double t, int n_qubits) {
  check_qubits(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  ProjectorPlan plan;
  plan.n_qubits = n_qubits;
  plan.threshold = t;
  for (std::size_t i = 0; i < dim; ++i) {
    plan.projectors.push_back(make_projector(ProjectorKind::diagonal, i, i, n_qubits));
  }
  for (const auto& [i, j] : pairs) {
    if (!(i < j && j < dim)) throw ContractError("projector pair out of range");
    plan.projectors.push_back(make_projector(ProjectorKind::real_part, i, j, n_qubits));
    plan.projectors.push_back(make_projector(ProjectorKind::imag_part, i, j, n_qubits));
  }
  plan.pairs = std::move(pairs);
  plan.settings = compile_settings(plan.projectors, n_qubits);
  return plan;
}

ProjectorPlan build_plan(std::span<const double> c, double t, int n_qubits) {
  check_qubits(n_qubits);
  if (c.size() != (std::size_t{1} << n_qubits)) {
    throw ShapeError("build_plan: diagonal has " + std::to_string(c.size()) + " entries");
  }
  return build_plan_for_pairs(select_offdiagonals(c, t), t, n_qubits);
}

}  // namespace tqst::tomo

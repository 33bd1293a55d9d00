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
#include <string>
#include <vector>

#include "tqst/mesh.hpp"
#include "tqst/types.hpp"

namespace tqst::tomo {

// Qubit 0 is the topmost rail pair and the most significant bit of a
// computational-basis index.

enum class Pauli : std::uint8_t { I, X, Y, Z };
using PauliString = std::vector<Pauli>;

struct PauliTerm {
  PauliString string;
  Complex coefficient;
};

/// One local basis per qubit.
using LocalBases = std::vector<mesh::Basis>;

std::string to_string(const PauliString& s);
std::string to_string(const LocalBases& bases);
LocalBases parse_bases(const std::string& letters);

ComplexMatrix pauli_matrix(const PauliString& s);

/// Pauli expansion of |a><b| on n qubits (2^n terms).
std::vector<PauliTerm> decompose_outer(std::uint64_t a, std::uint64_t b, int n_qubits);

/// Pauli expansion of a Hermitian operator given as a sum of outer products;
/// terms merged and sorted, near-zero coefficients dropped.
std::vector<PauliTerm> merge_terms(const std::vector<PauliTerm>& terms);

/// Whether measuring every qubit in `bases` yields the value of `s`.
bool covers(const LocalBases& bases, const PauliString& s);

/// Eigenvalue (+1/-1) of `s` for a measurement outcome whose bit l is 0 when
/// qubit l landed in the +1 eigenstate of its local basis.
int outcome_sign(const PauliString& s, std::uint64_t outcome);

/// All 3^n local settings in lexicographic X < Y < Z order.
std::vector<LocalBases> all_settings(int n_qubits);

LocalBases computational_setting(int n_qubits);

/// 2x2 unitary whose rows are the +1 and -1 eigenbras of `basis`.
Eigen::Matrix2cd basis_change(mesh::Basis basis);

/// Tensor product of basis_change over qubits (qubit 0 most significant).
ComplexMatrix setting_unitary(const LocalBases& bases);

}  // namespace tqst::tomo

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

#include "tqst/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tqst/error.hpp"

namespace tqst::tomo {

namespace {

const Complex kI{0.0, 1.0};

constexpr char letter(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

// |a><b| for single-qubit bits, as two Pauli terms.
void single_outer(int a, int b, Pauli out[2], Complex coef[2]) {
  if (a == b) {
    out[0] = Pauli::I;
    coef[0] = 0.5;
    out[1] = Pauli::Z;
    coef[1] = a == 0 ? 0.5 : -0.5;
  } else {
    out[0] = Pauli::X;
    coef[0] = 0.5;
    out[1] = Pauli::Y;
    coef[1] = a == 0 ? 0.5 * kI : -0.5 * kI;
  }
}

}  // namespace

std::string to_string(const PauliString& s) {
  std::string out;
  for (Pauli p : s) out.push_back(letter(p));
  return out;
}

std::string to_string(const LocalBases& bases) {
  std::string out;
  for (auto b : bases) out.push_back(mesh::basis_letter(b));
  return out;
}

LocalBases parse_bases(const std::string& letters) {
  LocalBases out;
  for (char c : letters) out.push_back(mesh::parse_basis(c));
  return out;
}

ComplexMatrix pauli_matrix(const PauliString& s) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (Pauli p : s) {
    Eigen::Matrix2cd m;
    switch (p) {
      case Pauli::I: m << 1, 0, 0, 1; break;
      case Pauli::X: m << 0, 1, 1, 0; break;
      case Pauli::Y: m << 0, -kI, kI, 0; break;
      case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) {
        next.block(2 * r, 2 * c, 2, 2) = out(r, c) * m;
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<PauliTerm> decompose_outer(std::uint64_t a, std::uint64_t b, int n_qubits) {
  std::vector<PauliTerm> terms{{PauliString{}, Complex{1.0, 0.0}}};
  for (int q = 0; q < n_qubits; ++q) {
    const int shift = n_qubits - 1 - q;
    const int abit = static_cast<int>((a >> shift) & 1U);
    const int bbit = static_cast<int>((b >> shift) & 1U);
    Pauli ps[2];
    Complex cs[2];
    single_outer(abit, bbit, ps, cs);
    std::vector<PauliTerm> next;
    next.reserve(terms.size() * 2);
    for (const auto& t : terms) {
      for (int k = 0; k < 2; ++k) {
        PauliTerm nt = t;
        nt.string.push_back(ps[k]);
        nt.coefficient *= cs[k];
        next.push_back(std::move(nt));
      }
    }
    terms = std::move(next);
  }
  return terms;
}

std::vector<PauliTerm> merge_terms(const std::vector<PauliTerm>& terms) {
  std::map<PauliString, Complex> acc;
  for (const auto& t : terms) acc[t.string] += t.coefficient;
  std::vector<PauliTerm> out;
  for (const auto& [s, c] : acc) {
    if (std::abs(c) > 1e-14) out.push_back({s, c});
  }
  return out;
}

bool covers(const LocalBases& bases, const PauliString& s) {
  if (bases.size() != s.size()) return false;
  for (std::size_t q = 0; q < s.size(); ++q) {
    switch (s[q]) {
      case Pauli::I: break;
      case Pauli::X: if (bases[q] != mesh::Basis::X) return false; break;
      case Pauli::Y: if (bases[q] != mesh::Basis::Y) return false; break;
      case Pauli::Z: if (bases[q] != mesh::Basis::Z) return false; break;
    }
  }
  return true;
}

int outcome_sign(const PauliString& s, std::uint64_t outcome) {
  const int n = static_cast<int>(s.size());
  int parity = 0;
  for (int q = 0; q < n; ++q) {
    if (s[static_cast<std::size_t>(q)] != Pauli::I) {
      parity ^= static_cast<int>((outcome >> (n - 1 - q)) & 1U);
    }
  }
  return parity ? -1 : 1;
}

std::vector<LocalBases> all_settings(int n_qubits) {
  std::vector<LocalBases> out{LocalBases{}};
  for (int q = 0; q < n_qubits; ++q) {
    std::vector<LocalBases> next;
    for (const auto& prefix : out) {
      for (auto b : {mesh::Basis::X, mesh::Basis::Y, mesh::Basis::Z}) {
        auto s = prefix;
        s.push_back(b);
        next.push_back(std::move(s));
      }
    }
    out = std::move(next);
  }
  return out;
}

LocalBases computational_setting(int n_qubits) {
  return LocalBases(static_cast<std::size_t>(n_qubits), mesh::Basis::Z);
}

Eigen::Matrix2cd basis_change(mesh::Basis basis) {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd u;
  switch (basis) {
    case mesh::Basis::Z: u << 1, 0, 0, 1; break;
    case mesh::Basis::X: u << h, h, h, -h; break;
    case mesh::Basis::Y: u << h, -kI * h, h, kI * h; break;
  }
  return u;
}

ComplexMatrix setting_unitary(const LocalBases& bases) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (auto b : bases) {
    const Eigen::Matrix2cd m = basis_change(b);
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) {
        next.block(2 * r, 2 * c, 2, 2) = out(r, c) * m;
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace tqst::tomo

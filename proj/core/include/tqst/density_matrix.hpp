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

#include "tqst/types.hpp"

namespace tqst {

/// Hermitian, trace-one, positive semi-definite 2^n x 2^n matrix.
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kEigenvalueFloor = -1e-9;

  /// Validates the invariants and throws ContractError when they fail.
  /// The one-qubit maximally mixed state.
  DensityMatrix();

  static DensityMatrix from_matrix(ComplexMatrix m);
  static DensityMatrix pure(const ComplexVector& state);
  static DensityMatrix maximally_mixed(int n_qubits);

  /// Hermitian part, eigenvalues clipped at zero, trace renormalized.
  static DensityMatrix project_psd(const ComplexMatrix& m);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }
  RealVector diagonal() const { return matrix_.diagonal().real(); }

 private:
  explicit DensityMatrix(ComplexMatrix m);
  ComplexMatrix matrix_;
  int n_qubits_ = 0;
};

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const ComplexMatrix& m);

int qubits_for_dimension(Eigen::Index dim);

}  // namespace tqst

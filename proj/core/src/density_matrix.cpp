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

#include "tqst/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "tqst/error.hpp"

namespace tqst {

int qubits_for_dimension(Eigen::Index dim) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d *= 2;
    ++n;
  }
  if (d != dim || dim < 2) {
    throw ShapeError("density matrix dimension " + std::to_string(dim) + " is not 2^n, n >= 1");
  }
  return n;
}

double min_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  n_qubits_ = qubits_for_dimension(matrix_.rows());
}

DensityMatrix::DensityMatrix() : DensityMatrix(ComplexMatrix::Identity(2, 2) * 0.5) {}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (m.rows() != m.cols()) throw ShapeError("density matrix must be square");
  if (!m.allFinite()) throw ContractError("density matrix has non-finite entries");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTolerance) {
    throw ContractError("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw ContractError("density matrix trace is " + std::to_string(trace));
  }
  const double lmin = min_eigenvalue(m);
  if (lmin < kEigenvalueFloor) {
    throw ContractError("density matrix has eigenvalue " + std::to_string(lmin));
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& state) {
  const double norm = state.norm();
  if (norm == 0.0) throw ContractError("pure state has zero norm");
  const ComplexVector psi = state / norm;
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::project_psd(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("density matrix must be square");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  RealVector lambda = eig.eigenvalues().cwiseMax(0.0);
  const double total = lambda.sum();
  if (!(total > 0.0)) throw ContractError("PSD projection of a matrix with no positive spectrum");
  lambda /= total;
  ComplexMatrix out = eig.eigenvectors() * lambda.cast<Complex>().asDiagonal() *
                      eig.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(std::move(out));
}

}  // namespace tqst

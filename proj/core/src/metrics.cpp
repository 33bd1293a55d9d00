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

#include "tqst/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "tqst/error.hpp"
#include "tqst/io.hpp"

namespace tqst::metrics {

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  RealVector ev = es.eigenvalues();
  // Round-off eigenvalues of a rank-deficient matrix would turn into ~1e-8 roots.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < ev.size(); ++k) ev(k) = ev(k) > floor ? std::sqrt(ev(k)) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ShapeError("fidelity: dimension mismatch");
  // ||sqrt(rho) sqrt(sigma)||_1^2, symmetric in its arguments by construction.
  const ComplexMatrix a = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
  const double tn = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues().sum();
  return std::clamp(tn * tn, 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return std::clamp(rho.matrix().squaredNorm(), 0.0, 1.0);
}

std::vector<ComparisonRow> comparison_table(const std::vector<RunSummary>& runs) {
  std::vector<ComparisonRow> rows;
  rows.reserve(runs.size());
  for (const auto& r : runs) {
    if (r.rho_0.dim() != r.rho_t.dim() || r.rho_0.dim() != r.rho_m.dim()) {
      throw ShapeError("comparison_table: run " + r.label + " mixes dimensions");
    }
    ComparisonRow row;
    row.label = r.label;
    row.gini = r.gini;
    row.n_t = r.n_t;
    row.n_0 = r.n_0;
    row.settings_t = r.settings_t;
    row.settings_0 = r.settings_0;
    row.f_0t = fidelity(r.rho_0, r.rho_t);
    row.f_0m = fidelity(r.rho_0, r.rho_m);
    row.f_tm = fidelity(r.rho_t, r.rho_m);
    row.p_0 = purity(r.rho_0);
    row.p_t = purity(r.rho_t);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ComparisonRow& a, const ComparisonRow& b) { return a.label < b.label; });
  return rows;
}

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
  using io::format_double;
  os << kComparisonColumns << '\n';
  for (const auto& r : rows) {
    os << r.label << ',' << format_double(r.gini) << ',' << r.n_t << ',' << r.n_0 << ','
       << r.settings_t << ',' << r.settings_0 << ',' << format_double(r.f_0t) << ','
       << format_double(r.f_0m) << ',' << format_double(r.f_tm) << ',' << format_double(r.p_0)
       << ',' << format_double(r.p_t) << '\n';
  }
}

}  // namespace tqst::metrics

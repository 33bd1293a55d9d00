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

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "tqst/density_matrix.hpp"

namespace tqst::metrics {

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, evaluated as the
/// squared trace norm of sqrt(rho) sqrt(sigma) and clamped to [0,1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// tr rho^2.
double purity(const DensityMatrix& rho);

/// Hermitian square root; eigenvalues at round-off level or below map to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

struct ComparisonRow {
  std::string label;
  double gini = 0.0;  // of the ideal diagonal
  std::size_t n_t = 0;
  std::size_t n_0 = 0;
  std::size_t settings_t = 0;
  std::size_t settings_0 = 0;
  double f_0t = 0.0;
  double f_0m = 0.0;
  double f_tm = 0.0;
  double p_0 = 0.0;
  double p_t = 0.0;
};

struct RunSummary {
  std::string label;
  double gini = 0.0;
  DensityMatrix rho_0;  // full tomography
  DensityMatrix rho_t;  // threshold tomography
  DensityMatrix rho_m;  // model prediction
  std::size_t n_t = 0;
  std::size_t n_0 = 0;
  std::size_t settings_t = 0;
  std::size_t settings_0 = 0;
};

/// One row per run, ordered by label.
std::vector<ComparisonRow> comparison_table(const std::vector<RunSummary>& runs);

/// Column order of write_comparison_csv.
inline constexpr const char* kComparisonColumns =
    "label,gini,N_t,N_0,settings_t,settings_0,F_0t,F_0m,F_tm,P_0,P_t";

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows);

}  // namespace tqst::metrics

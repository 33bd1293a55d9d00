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

#include "tqst/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tqst/error.hpp"

namespace tqst::tomo {

double gini_index(std::span<const double> c) {
  if (c.empty()) throw ContractError("gini_index: empty vector");
  std::vector<double> sorted(c.begin(), c.end());
  double norm = 0.0;
  for (double v : sorted) {
    if (!(v >= 0.0)) throw ContractError("gini_index: negative or non-finite entry");
    norm += v;
  }
  if (norm <= 0.0) throw ContractError("gini_index: undefined for the all-zero vector");
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    // k is 0-based here, so N - (k+1) + 1/2 = N - k - 1/2.
    acc += (sorted[k] / norm) * ((n - static_cast<double>(k) - 0.5) / n);
  }
  return std::clamp(1.0 - 2.0 * acc, 0.0, 1.0 - 1.0 / n);
}

double threshold(std::span<const double> c, int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (c.size() != dim) {
    throw ShapeError("threshold: diagonal has " + std::to_string(c.size()) + " entries, expected " +
                     std::to_string(dim));
  }
  double norm = 0.0;
  for (double v : c) norm += v;
  return norm * gini_index(c) / static_cast<double>(dim - 1);
}

double pair_score(std::span<const double> c, std::size_t i, std::size_t j) {
  return std::sqrt(std::max(c[i], 0.0) * std::max(c[j], 0.0));
}

std::vector<std::pair<std::size_t, std::size_t>> select_offdiagonals(std::span<const double> c,
                                                                     double t) {
  if (!(t >= 0.0)) throw ContractError("select_offdiagonals: threshold must be >= 0");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (pair_score(c, i, j) >= t) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

}  // namespace tqst::tomo

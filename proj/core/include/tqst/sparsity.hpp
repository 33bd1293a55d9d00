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
#include <span>
#include <utility>
#include <vector>

namespace tqst::tomo {

/// Gini index of a non-negative vector: sort ascending and return
/// 1 - 2 sum_k (c_k / |c|_1) (N - k + 1/2) / N. Lies in [0, 1 - 1/N]:
/// 0 for a uniform vector, 1 - 1/N for a one-hot vector.
/// Throws ContractError on negative entries or an all-zero vector.
double gini_index(std::span<const double> c);

/// t = |c|_1 GI(c) / (2^n - 1).
double threshold(std::span<const double> c, int n_qubits);

/// Score sqrt(c_i c_j) that an off-diagonal pair must reach.
double pair_score(std::span<const double> c, std::size_t i, std::size_t j);

/// Every pair i < j with sqrt(c_i c_j) >= t, lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> select_offdiagonals(std::span<const double> c,
                                                                     double t);

}  // namespace tqst::tomo

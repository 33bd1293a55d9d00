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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "tqst/types.hpp"

namespace tqst::fock {

/// Photon occupation numbers of m optical modes.
class FockConfig {
 public:
  FockConfig() = default;
  explicit FockConfig(std::vector<int> occupations);

  int modes() const { return static_cast<int>(occupations_.size()); }
  int photons() const { return photons_; }
  int operator[](int mode) const { return occupations_[static_cast<std::size_t>(mode)]; }
  const std::vector<int>& occupations() const { return occupations_; }

  /// Π_i s_i!
  double factorial_product() const;
  std::string to_string() const;

  friend bool operator==(const FockConfig&, const FockConfig&) = default;
  friend auto operator<=>(const FockConfig& a, const FockConfig& b) {
    return a.occupations_ <=> b.occupations_;
  }

 private:
  std::vector<int> occupations_;
  int photons_ = 0;
};

/// One mode index per photon, non-decreasing. This canonical labeling fixes
/// the row/column duplication order of every submatrix built from a config.
using AssignmentList = std::vector<int>;

AssignmentList to_assignment(const FockConfig& config);
FockConfig from_assignment(const AssignmentList& modes_per_photon, int modes);

/// C(n+m-1, n). Throws SizeError when the count does not fit the supported
/// enumeration budget.
std::uint64_t configuration_count(int n_photons, int m_modes);

/// Every placement of n photons in m modes, in descending lexicographic order
/// of the occupation list: (n,0,..,0) first, (0,..,0,n) last.
std::vector<FockConfig> enumerate_configurations(int n_photons, int m_modes);

inline constexpr int kMaxPermanentSize = 16;

/// Matrix permanent via Glynn's formula iterated in Gray-code order,
/// O(2^(n-1) n). Square input of size at most kMaxPermanentSize.
Complex permanent(const ComplexMatrix& m);

/// U_{S,T}: row j of U repeated t_j times, column i repeated s_i times.
ComplexMatrix build_submatrix(const ComplexMatrix& u, const FockConfig& input,
                              const FockConfig& output);

/// beta_{S->T} = per(U_{S,T}) / sqrt(prod s_i! prod t_j!).
Complex transition_amplitude(const ComplexMatrix& u, const FockConfig& input,
                             const FockConfig& output);

}  // namespace tqst::fock

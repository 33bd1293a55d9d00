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

#include "tqst/fock.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tqst/error.hpp"

namespace tqst::fock {

namespace {

// Enumerations larger than this are never needed at desk scale and would
// exhaust memory long before they finished.
constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 26;

void fill_configurations(int mode, int remaining, std::vector<int>& current,
                         std::vector<FockConfig>& out) {
  const int m = static_cast<int>(current.size());
  if (mode == m - 1) {
    current[static_cast<std::size_t>(mode)] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[static_cast<std::size_t>(mode)] = k;
    fill_configurations(mode + 1, remaining - k, current, out);
  }
}

}  // namespace

FockConfig::FockConfig(std::vector<int> occupations) : occupations_(std::move(occupations)) {
  for (int s : occupations_) {
    if (s < 0) throw ContractError("FockConfig: negative occupation");
    photons_ += s;
  }
}

double FockConfig::factorial_product() const {
  double product = 1.0;
  for (int s : occupations_) product *= std::tgamma(static_cast<double>(s) + 1.0);
  return product;
}

std::string FockConfig::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < occupations_.size(); ++i) {
    if (i) os << ',';
    os << occupations_[i];
  }
  os << ')';
  return os.str();
}

AssignmentList to_assignment(const FockConfig& config) {
  AssignmentList modes;
  modes.reserve(static_cast<std::size_t>(config.photons()));
  for (int j = 0; j < config.modes(); ++j) {
    for (int k = 0; k < config[j]; ++k) modes.push_back(j);
  }
  return modes;
}

FockConfig from_assignment(const AssignmentList& modes_per_photon, int modes) {
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  for (int mode : modes_per_photon) {
    if (mode < 0 || mode >= modes) throw ContractError("from_assignment: mode index out of range");
    ++occ[static_cast<std::size_t>(mode)];
  }
  return FockConfig(std::move(occ));
}

std::uint64_t configuration_count(int n_photons, int m_modes) {
  if (n_photons < 0 || m_modes < 1) {
    throw ContractError("configuration_count: need n >= 0 and m >= 1");
  }
  // C(n+m-1, k) with k = min(n, m-1), multiplicative form with overflow guard.
  const std::uint64_t top = static_cast<std::uint64_t>(n_photons) + static_cast<std::uint64_t>(m_modes) - 1;
  const std::uint64_t k = std::min<std::uint64_t>(static_cast<std::uint64_t>(n_photons),
                                                  static_cast<std::uint64_t>(m_modes) - 1);
  std::uint64_t count = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = top - k + i;
    if (count > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw SizeError("configuration_count: count overflows 64 bits");
    }
    count = count * factor / i;
    if (count > kMaxEnumeration) {
      throw SizeError("configuration_count: " + std::to_string(n_photons) + " photons in " +
                      std::to_string(m_modes) + " modes exceeds the enumeration budget");
    }
  }
  return count;
}

std::vector<FockConfig> enumerate_configurations(int n_photons, int m_modes) {
  const auto count = configuration_count(n_photons, m_modes);
  std::vector<FockConfig> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> current(static_cast<std::size_t>(m_modes), 0);
  fill_configurations(0, n_photons, current, out);
  return out;
}

Complex permanent(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("permanent: matrix is not square");
  const int n = static_cast<int>(m.rows());
  if (n > kMaxPermanentSize) {
    throw SizeError("permanent: size " + std::to_string(n) + " exceeds limit " +
                    std::to_string(kMaxPermanentSize));
  }
  if (n == 0) return {1.0, 0.0};
  if (n == 1) return m(0, 0);

  // Glynn: per(A) = 2^{1-n} sum_delta (prod_k delta_k) prod_j (sum_i delta_i a_ij)
  // with delta_0 = +1. Column sums are updated one row flip at a time.
  std::vector<Complex> col_sum(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Complex s = 0.0;
    for (int i = 0; i < n; ++i) s += m(i, j);
    col_sum[static_cast<std::size_t>(j)] = s;
  }
  auto product = [&] {
    Complex p = 1.0;
    for (const auto& c : col_sum) p *= c;
    return p;
  };

  Complex total = product();
  int sign = 1;
  std::uint64_t gray = 0;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  std::vector<int> delta(static_cast<std::size_t>(n), 1);
  for (std::uint64_t k = 1; k < steps; ++k) {
    const std::uint64_t next = k ^ (k >> 1);
    const std::uint64_t flipped = gray ^ next;
    gray = next;
    const int row = 1 + std::countr_zero(flipped);
    auto& d = delta[static_cast<std::size_t>(row)];
    for (int j = 0; j < n; ++j) {
      col_sum[static_cast<std::size_t>(j)] -= 2.0 * static_cast<double>(d) * m(row, j);
    }
    d = -d;
    sign = -sign;
    total += static_cast<double>(sign) * product();
  }
  return total / static_cast<double>(steps);
}

ComplexMatrix build_submatrix(const ComplexMatrix& u, const FockConfig& input,
                              const FockConfig& output) {
  if (u.rows() != u.cols()) throw ShapeError("build_submatrix: U is not square");
  if (input.modes() != u.cols() || output.modes() != u.rows()) {
    throw ShapeError("build_submatrix: configuration mode count does not match U");
  }
  if (input.photons() != output.photons()) {
    throw ContractError("build_submatrix: input has " + std::to_string(input.photons()) +
                        " photons, output has " + std::to_string(output.photons()));
  }
  const auto rows = to_assignment(output);
  const auto cols = to_assignment(input);
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix sub(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      sub(r, c) = u(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
    }
  }
  return sub;
}

Complex transition_amplitude(const ComplexMatrix& u, const FockConfig& input,
                             const FockConfig& output) {
  const auto sub = build_submatrix(u, input, output);
  return permanent(sub) / std::sqrt(input.factorial_product() * output.factorial_product());
}

}  // namespace tqst::fock

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

#include <cmath>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "tqst/pauli.hpp"

using namespace tqst;
using namespace tqst::tomo;

namespace {

int code_of(const PauliString& s) {
  int code = 0;
  for (Pauli p : s) code = code * 4 + static_cast<int>(p);
  return code;
}

}  // namespace

TEST_CASE("Pauli matrices match Kronecker products") {
  const PauliString s{Pauli::X, Pauli::Y, Pauli::Z};
  CHECK(to_string(s) == "XYZ");
  CHECK((pauli_matrix(s) - oracle::pauli_string({1, 2, 3})).norm() < 1e-15);
}

TEST_CASE("outer-product decomposition matches the trace formula") {
  for (int n : {1, 2, 3}) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < dim; ++a) {
      for (std::uint64_t b = 0; b < dim; ++b) {
        ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 1.0;
        const auto ref = oracle::pauli_coefficients(m, n);
        std::vector<Complex> got(ref.size(), 0.0);
        for (const auto& t : decompose_outer(a, b, n)) got[static_cast<std::size_t>(code_of(t.string))] += t.coefficient;
        for (std::size_t k = 0; k < ref.size(); ++k) CHECK(std::abs(got[k] - ref[k]) < 1e-14);
      }
    }
  }
}

TEST_CASE("Bell projector decomposition") {
  std::vector<PauliTerm> all;
  for (auto [a, b] : std::initializer_list<std::pair<int, int>>{{0, 0}, {0, 3}, {3, 0}, {3, 3}}) {
    for (auto t : decompose_outer(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b), 2)) {
      t.coefficient *= 0.5;
      all.push_back(t);
    }
  }
  const auto merged = merge_terms(all);
  REQUIRE(merged.size() == 4);
  std::map<std::string, Complex> by_name;
  for (const auto& t : merged) by_name[to_string(t.string)] = t.coefficient;
  CHECK(std::abs(by_name["II"] - Complex(0.25)) < 1e-15);
  CHECK(std::abs(by_name["XX"] - Complex(0.25)) < 1e-15);
  CHECK(std::abs(by_name["YY"] - Complex(-0.25)) < 1e-15);
  CHECK(std::abs(by_name["ZZ"] - Complex(0.25)) < 1e-15);
}

TEST_CASE("setting coverage and outcome signs") {
  const auto xz = parse_bases("XZ");
  CHECK(covers(xz, {Pauli::X, Pauli::I}));
  CHECK(covers(xz, {Pauli::I, Pauli::Z}));
  CHECK(covers(xz, {Pauli::X, Pauli::Z}));
  CHECK(!covers(xz, {Pauli::Y, Pauli::Z}));
  CHECK(!covers(xz, {Pauli::X}));
  CHECK(outcome_sign({Pauli::Z, Pauli::Z}, 0b01) == -1);
  CHECK(outcome_sign({Pauli::I, Pauli::Z}, 0b10) == 1);
  CHECK(outcome_sign({Pauli::Z, Pauli::I}, 0b10) == -1);
  CHECK(all_settings(3).size() == 27);
  CHECK(to_string(computational_setting(3)) == "ZZZ");
}

TEST_CASE("setting unitaries diagonalize covered strings") {
  for (const auto& bases : all_settings(2)) {
    const auto v = setting_unitary(bases);
    CHECK((v.adjoint() * v - ComplexMatrix::Identity(4, 4)).norm() < 1e-14);
    for (int code = 0; code < 16; ++code) {
      const PauliString s{static_cast<Pauli>(code / 4), static_cast<Pauli>(code % 4)};
      if (!covers(bases, s)) continue;
      const ComplexMatrix d = v * pauli_matrix(s) * v.adjoint();
      for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(d(k, k) - Complex(outcome_sign(s, static_cast<std::uint64_t>(k)))) < 1e-14);
      }
    }
  }
}

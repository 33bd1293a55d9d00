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

#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "tqst/error.hpp"
#include "tqst/metrics.hpp"

using namespace tqst;
using namespace tqst::metrics;

namespace {

// Normalized factor g with rho = g g^dagger.
ComplexMatrix random_factor(int dim, int rank, std::mt19937_64& rng) {
  const ComplexMatrix g = oracle::random_complex(dim, rank, rng);
  return g / g.norm();
}

DensityMatrix from_factor(const ComplexMatrix& g) { return DensityMatrix::from_matrix(g * g.adjoint()); }

}  // namespace

TEST_CASE("fidelity agrees with the factored form") {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 50; ++k) {
    const int dim = 2 << (k % 3);
    const ComplexMatrix ga = random_factor(dim, 1 + k % dim, rng);
    const ComplexMatrix gb = random_factor(dim, 1 + (k + 1) % dim, rng);
    const auto a = from_factor(ga);
    const auto b = from_factor(gb);
    const double f = fidelity(a, b);
    CHECK(f == doctest::Approx(oracle::fidelity_from_factors(ga, gb)).epsilon(1e-9));
    CHECK(f == doctest::Approx(fidelity(b, a)).epsilon(1e-12));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("fidelity of pure states") {
  std::mt19937_64 rng(52);
  ComplexVector a = oracle::random_complex(4, 1, rng);
  ComplexVector b = oracle::random_complex(4, 1, rng);
  a.normalize();
  b.normalize();
  CHECK(fidelity(DensityMatrix::pure(a), DensityMatrix::pure(b)) ==
        doctest::Approx(std::norm(a.dot(b))).epsilon(1e-9));
  ComplexVector e0 = ComplexVector::Zero(2), e1 = ComplexVector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  CHECK(fidelity(DensityMatrix::pure(e0), DensityMatrix::pure(e1)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(fidelity(DensityMatrix::pure(e0), DensityMatrix::maximally_mixed(2)), ShapeError);
}

TEST_CASE("purity") {
  ComplexVector v = ComplexVector::Zero(4);
  v(2) = 1.0;
  CHECK(purity(DensityMatrix::pure(v)) == doctest::Approx(1.0));
  CHECK(purity(DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.25));
  CHECK(purity(DensityMatrix::maximally_mixed(1)) == doctest::Approx(0.5));
}

TEST_CASE("PSD square root") {
  std::mt19937_64 rng(53);
  const auto a = from_factor(random_factor(4, 4, rng));
  const ComplexMatrix s = psd_sqrt(a.matrix());
  CHECK((s * s - a.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("comparison table") {
  std::mt19937_64 rng(54);
  const auto a = from_factor(random_factor(4, 2, rng));
  const auto b = from_factor(random_factor(4, 3, rng));
  std::vector<RunSummary> runs{{"zeta", 0.5, a, a, a, 6, 16, 5, 9}, {"alpha", 0.1, a, b, a, 8, 16, 6, 9}};
  const auto rows = comparison_table(runs);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].label == "alpha");
  CHECK(rows[1].f_0t == doctest::Approx(1.0));
  CHECK(rows[1].f_0m == doctest::Approx(1.0));
  CHECK(rows[1].f_tm == doctest::Approx(1.0));
  CHECK(rows[0].f_0t == doctest::Approx(fidelity(a, b)));
  CHECK(rows[0].p_t == doctest::Approx(purity(b)));
  CHECK(rows[1].n_t == 6);

  std::ostringstream os;
  write_comparison_csv(os, rows);
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  CHECK(header == kComparisonColumns);
  int lines = 0;
  while (std::getline(is, line)) ++lines;
  CHECK(lines == 2);

  runs.push_back({"mixed", 0.0, DensityMatrix::maximally_mixed(1), a, a, 1, 1, 1, 1});
  CHECK_THROWS_AS(comparison_table(runs), ShapeError);
}

TEST_CASE("density matrix invariants") {
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad), ContractError);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad), ContractError);
  const auto p = DensityMatrix::project_psd(bad);
  CHECK(min_eigenvalue(p.matrix()) >= -1e-15);
  CHECK(p.matrix().trace().real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix::Identity(3, 3) / 3.0), ContractError);
}

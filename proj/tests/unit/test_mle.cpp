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
#include <random>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "tqst/error.hpp"
#include "tqst/metrics.hpp"
#include "tqst/stategen.hpp"
#include "tqst/tomo.hpp"

using namespace tqst;
using namespace tqst::tomo;

namespace {

std::vector<double> exact_values(const ProjectorPlan& plan, const DensityMatrix& rho) {
  std::vector<double> out;
  for (const auto& p : plan.projectors) {
    const ComplexVector s = p.state(plan.n_qubits);
    out.push_back((s.adjoint() * rho.matrix() * s)(0, 0).real());
  }
  return out;
}

ProjectorPlan full_plan(int n) { return build_plan(std::vector<double>(std::size_t{1} << n, 1.0), 0.0, n); }

void check_physical(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(m.trace() - Complex(1.0)) < 1e-12);
  CHECK(min_eigenvalue(m) > -1e-12);
}

}  // namespace

TEST_CASE("full plan recovers a random pure state") {
  std::mt19937_64 rng(41);
  ComplexVector psi = oracle::random_complex(4, 1, rng);
  psi.normalize();
  const auto truth = DensityMatrix::pure(psi);
  const auto plan = full_plan(2);
  const auto res = mle_reconstruct(plan, exact_values(plan, truth), {5, 1});
  check_physical(res.rho);
  CHECK(metrics::fidelity(res.rho, truth) >= 0.999);
  CHECK(res.diagnostics.converged_starts >= 1);
  CHECK(res.diagnostics.start_objectives.size() == 5);
}

TEST_CASE("full plan recovers the maximally mixed state") {
  const auto plan = full_plan(2);
  const auto res = mle_reconstruct(plan, exact_values(plan, DensityMatrix::maximally_mixed(2)));
  CHECK((res.rho.matrix() - ComplexMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("GHZ3 from its ten-projector plan") {
  const ComplexVector ghz = stategen::ideal_state(mesh::PresetKind::ghz3);
  const auto truth = DensityMatrix::pure(ghz);
  const RealVector d = ghz.cwiseAbs2();
  const std::vector<double> diag(d.data(), d.data() + d.size());
  const auto plan = build_plan(diag, threshold(diag, 3), 3);
  REQUIRE(plan.projector_count() == 10);
  const auto res = mle_reconstruct(plan, exact_values(plan, truth));
  CHECK(metrics::fidelity(res.rho, truth) >= 0.99);
}

TEST_CASE("MLE output is always physical") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    const int dim = 1 << n;
    const ComplexMatrix g = oracle::random_complex(dim, dim, rng);
    ComplexMatrix r = g * g.adjoint();
    const auto truth = DensityMatrix::from_matrix(r / r.trace().real());
    std::vector<double> diag(static_cast<std::size_t>(dim));
    for (auto& v : diag) v = u(rng);
    const auto plan = build_plan(diag, 0.3 * u(rng), n);
    const auto rec = acquire_counts(plan, ExactSource{truth}, {500, static_cast<std::uint64_t>(trial), false});
    const auto values = estimate_projector_values(plan, rec).values;
    const auto res = mle_reconstruct(plan, values, {3, static_cast<std::uint64_t>(trial)});
    check_physical(res.rho);
  }
}

TEST_CASE("MLE is deterministic and validates input") {
  const auto plan = full_plan(2);
  const auto v = exact_values(plan, DensityMatrix::pure(stategen::ideal_state(mesh::PresetKind::bell_psi_plus)));
  const auto a = mle_reconstruct(plan, v, {3, 7});
  const auto b = mle_reconstruct(plan, v, {3, 7});
  CHECK(a.rho.matrix() == b.rho.matrix());

  CHECK_THROWS_AS(mle_reconstruct(plan, std::vector<double>(3, 0.1)), ShapeError);
  auto bad = v;
  bad[0] = 1.5;
  CHECK_THROWS_AS(mle_reconstruct(plan, bad), ContractError);
  CHECK_THROWS_AS(mle_reconstruct(plan, v, {0, 0}), ContractError);
}

TEST_CASE("non-convergence carries the best iterate") {
  std::mt19937_64 rng(43);
  ComplexVector psi = oracle::random_complex(8, 1, rng);
  psi.normalize();
  const auto plan = full_plan(3);
  MleOptions opts;
  opts.starts = 2;
  opts.max_iterations = 1;
  bool thrown = false;
  try {
    mle_reconstruct(plan, exact_values(plan, DensityMatrix::pure(psi)), opts);
  } catch (const ReconstructionError& e) {
    thrown = true;
    check_physical(e.best().rho);
    CHECK(e.best().diagnostics.converged_starts == 0);
    CHECK(e.best().diagnostics.start_objectives.size() == 2);
  }
  CHECK(thrown);
}

TEST_CASE("threshold pipeline on noise-free presets") {
  struct Case {
    mesh::PresetStateId id;
    mesh::PresetKind kind;
    std::size_t n_t;
  };
  const Case cases[] = {{mesh::PresetStateId::bell_psi_plus(), mesh::PresetKind::bell_psi_plus, 6},
                        {mesh::PresetStateId::ghz3(), mesh::PresetKind::ghz3, 10},
                        {mesh::PresetStateId::w3(), mesh::PresetKind::w3, 14},
                        {mesh::PresetStateId::ghz4(), mesh::PresetKind::ghz4, 18}};
  for (const auto& c : cases) {
    const auto layout = mesh::preset_layout(c.id);
    Acquirer acq(ModelSource{layout, noise::NoiseParams::ideal()}, c.id.n_qubits, {100000, 1, true});
    const auto res = run_tqst(acq, ThresholdMode::gini(), {3, 1});
    CHECK(res.diagnostics.n_t == c.n_t);
    CHECK(res.diagnostics.n_0 == (std::size_t{1} << (2 * c.id.n_qubits)));
    const auto truth = DensityMatrix::pure(stategen::prepare_state(layout, c.id.n_qubits).state.amplitudes);
    CHECK(metrics::fidelity(res.rho, truth) >= 0.99);
  }
}

TEST_CASE("fixed zero threshold equals full tomography") {
  const auto layout = mesh::preset_layout(mesh::PresetStateId::bell_psi_plus());
  Acquirer acq(ModelSource{layout, noise::NoiseParams::lab()}, 2, {20000, 3, false});
  const auto qst = run_qst(acq, {2, 5});
  const auto fixed = run_tqst(acq, ThresholdMode::fixed(0.0), {2, 5});
  CHECK(qst.plan.pairs == fixed.plan.pairs);
  CHECK(qst.plan.projector_count() == 16);
  CHECK(qst.rho.matrix() == fixed.rho.matrix());
  CHECK_THROWS_AS(run_tqst(acq, ThresholdMode::fixed(-0.1)), ContractError);
}

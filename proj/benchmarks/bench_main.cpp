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

#include <benchmark/benchmark.h>

#include "tqst/fock.hpp"
#include "tqst/mesh.hpp"
#include "tqst/noise.hpp"
#include "tqst/stategen.hpp"
#include "tqst/tomo.hpp"

namespace {

using namespace tqst;

ComplexMatrix random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

void BM_Permanent(benchmark::State& state) {
  const auto m = random_matrix(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(fock::permanent(m));
}
BENCHMARK(BM_Permanent)->DenseRange(2, 12, 2);

void BM_PartialDistinguishability(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int modes = 2 * n;
  const Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(modes, 2));
  const ComplexMatrix u = qr.householderQ();
  const auto input = stategen::dual_rail_input(n, modes);
  const auto s = noise::GramMatrix::all_ones(n);
  for (auto _ : state) benchmark::DoNotOptimize(noise::partial_dist_distribution(u, input, s));
}
BENCHMARK(BM_PartialDistinguishability)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Postselect(benchmark::State& state) {
  const auto layout = mesh::preset_layout(mesh::PresetStateId::ghz4());
  for (auto _ : state) benchmark::DoNotOptimize(stategen::prepare_state(layout, 4));
}
BENCHMARK(BM_Postselect)->Unit(benchmark::kMicrosecond);

void BM_FullTomographyMle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto kind = n == 2 ? mesh::PresetKind::bell_psi_plus : mesh::PresetKind::ghz3;
  const auto rho = DensityMatrix::pure(stategen::ideal_state(kind));
  tomo::MleOptions mle;
  mle.starts = 1;
  for (auto _ : state) {
    tomo::Acquirer acq(tomo::ExactSource{rho}, n, {100000, 7, false});
    benchmark::DoNotOptimize(tomo::run_qst(acq, mle));
  }
}
BENCHMARK(BM_FullTomographyMle)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

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
#include "tqst/error.hpp"
#include "tqst/mesh.hpp"

using namespace tqst;
using namespace tqst::mesh;

namespace {

ComplexMatrix embed(int modes, int top, const Eigen::Matrix2cd& b) {
  ComplexMatrix e = ComplexMatrix::Identity(modes, modes);
  e.block(top, top, 2, 2) = b;
  return e;
}

MeshLayout random_layout(std::mt19937_64& rng, bool balanced) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> r(0.3, 0.7);
  MeshLayout layout = rectangular_layout(kChipModes, kChipLayers);
  for (auto& c : layout.cells) {
    c.rbs.theta = angle(rng);
    c.rbs.phi = angle(rng);
    c.role = CellRole::generation;
    if (!balanced) c.coupler = {r(rng), r(rng)};
  }
  return layout;
}

double bar_bound(double r1, double r2, double sign) {
  const double v = std::sqrt(r1 * r2) + sign * std::sqrt((1 - r1) * (1 - r2));
  return v * v;
}

}  // namespace

TEST_CASE("ideal RBS matrices") {
  const auto swap = rbs_unitary(0.0, 0.0);
  CHECK(std::abs(swap(0, 0)) < 1e-15);
  CHECK(std::abs(swap(0, 1) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(swap(1, 0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(swap(1, 1)) < 1e-15);

  const auto bar = rbs_unitary(kPi, 0.0);
  CHECK(std::abs(bar(0, 0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(bar(1, 1) - Complex(-1.0)) < 1e-15);
  CHECK(std::abs(bar(0, 1)) < 1e-15);

  const auto half = rbs_unitary(kPi / 2, kPi / 2);
  CHECK(std::norm(half(0, 0)) == doctest::Approx(0.5));
  CHECK(std::norm(half(1, 1)) == doctest::Approx(0.5));
  CHECK((half.adjoint() * half - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
}

TEST_CASE("balanced couplers reproduce the ideal cell") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int k = 0; k < 50; ++k) {
    const double th = angle(rng), ph = angle(rng);
    CHECK((rbs_unitary_physical(th, ph, {0.5, 0.5}) - rbs_unitary(th, ph)).norm() < 1e-12);
    CHECK(reflectivity(rbs_unitary_physical(th, ph, {0.5, 0.5})) ==
          doctest::Approx(std::pow(std::sin(th / 2), 2)).epsilon(1e-12));
  }
}

TEST_CASE("imperfect coupler reflectivity range") {
  const CouplerSpec c{0.5, 0.58};
  const double rmin = bar_bound(0.5, 0.58, -1.0);
  const double rmax = bar_bound(0.5, 0.58, +1.0);
  CHECK(rmin == doctest::Approx(0.00643).epsilon(1e-3));
  CHECK(rmax == doctest::Approx(0.99357).epsilon(1e-4));
  CHECK(reflectivity(rbs_unitary_physical(0.0, 0.0, c)) == doctest::Approx(rmin).epsilon(1e-10));
  CHECK(reflectivity(rbs_unitary_physical(kPi, 0.0, c)) == doctest::Approx(rmax).epsilon(1e-10));

  const auto b = reflectivity_bounds(c);
  CHECK(b.min == doctest::Approx(rmin).epsilon(1e-12));
  CHECK(b.max == doctest::Approx(rmax).epsilon(1e-12));

  const auto bal = reflectivity_bounds({0.5, 0.5});
  CHECK(bal.min == doctest::Approx(0.0));
  CHECK(bal.max == doctest::Approx(1.0));

  const auto same = reflectivity_bounds({0.58, 0.58});
  CHECK(same.min == doctest::Approx(0.0256).epsilon(1e-10));
  CHECK(same.max == doctest::Approx(1.0).epsilon(1e-12));

  // Every reachable value lies in [Rmin, Rmax].
  for (double th = 0.0; th < 2 * kPi; th += 0.1) {
    const double r = reflectivity(rbs_unitary_physical(th, 0.3, c));
    CHECK(r >= rmin - 1e-12);
    CHECK(r <= rmax + 1e-12);
  }
}

TEST_CASE("compose identity and single swap") {
  const auto id = rectangular_layout(6, 6);
  CHECK((compose_mesh(id) - ComplexMatrix::Identity(6, 6)).norm() < 1e-15);

  MeshLayout one;
  one.modes = 4;
  Cell c;
  c.rbs = {0.0, 0.0, 0};
  c.role = CellRole::generation;
  one.cells.push_back(c);
  const auto u = compose_mesh(one);
  CHECK(std::abs(u(1, 0) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(u(0, 1) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(u(2, 2) - Complex(1.0)) < 1e-14);
}

TEST_CASE("later layers act after earlier ones") {
  MeshLayout l;
  l.modes = 3;
  Cell a;
  a.layer = 0;
  a.rbs = {0.7, 0.2, 0};
  a.role = CellRole::generation;
  Cell b;
  b.layer = 1;
  b.rbs = {1.9, -0.4, 1};
  b.role = CellRole::generation;
  l.cells = {b, a};
  const ComplexMatrix expected = embed(3, 1, rbs_unitary(1.9, -0.4)) * embed(3, 0, rbs_unitary(0.7, 0.2));
  CHECK((compose_mesh(l) - expected).norm() < 1e-13);
}

TEST_CASE("random 8-mode layouts are unitary") {
  std::mt19937_64 rng(2026);
  for (int k = 0; k < 100; ++k) {
    const auto u = compose_mesh(random_layout(rng, k % 2 == 0));
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("layout validation") {
  MeshLayout l;
  l.modes = 4;
  Cell a;
  a.rbs.top_mode = 0;
  Cell b;
  b.rbs.top_mode = 1;
  l.cells = {a, b};
  CHECK_THROWS_AS(compose_mesh(l), LayoutError);
  l.cells = {a};
  l.cells[0].rbs.top_mode = 3;
  CHECK_THROWS_AS(compose_mesh(l), LayoutError);
  l.cells[0].rbs.top_mode = 0;
  l.cells[0].coupler.r1 = 1.5;
  CHECK_THROWS_AS(validate(l), LayoutError);
}

TEST_CASE("preset layouts") {
  const auto w3 = preset_layout(PresetStateId::w3());
  const Cell* t4 = find_cell(w3, 1, 3);
  const Cell* p5 = find_cell(w3, 2, 0);
  REQUIRE(t4 != nullptr);
  REQUIRE(p5 != nullptr);
  CHECK(t4->rbs.theta == doctest::Approx(1.230959).epsilon(1e-9));
  CHECK(p5->rbs.phi == doctest::Approx(2.094402).epsilon(1e-9));

  const auto ghz4 = preset_layout(PresetStateId::ghz4());
  int first_layer = 0;
  for (const auto& c : ghz4.cells) {
    if (c.layer != 0 || c.role != CellRole::generation) continue;
    ++first_layer;
    CHECK(reflectivity(rbs_unitary_physical(c.rbs.theta, c.rbs.phi, c.coupler)) == doctest::Approx(0.5));
  }
  CHECK(first_layer == 4);

  const auto r1 = preset_layout(PresetStateId::random(3, 99));
  const auto r2 = preset_layout(PresetStateId::random(3, 99));
  REQUIRE(r1.cells.size() == r2.cells.size());
  for (std::size_t k = 0; k < r1.cells.size(); ++k) {
    CHECK(r1.cells[k].rbs.theta == r2.cells[k].rbs.theta);
    CHECK(r1.cells[k].rbs.phi == r2.cells[k].rbs.phi);
  }
  CHECK_THROWS_AS(preset_layout({PresetKind::ghz3, 4, 0}), ParameterError);
  CHECK(parse_preset("ghz4") == PresetKind::ghz4);
  CHECK_THROWS_AS(parse_preset("nope"), ParameterError);
}

TEST_CASE("measurement programming touches only measurement cells") {
  const auto layout = preset_layout(PresetStateId::ghz3());
  const std::vector<Basis> bases{Basis::X, Basis::Y, Basis::Z};
  const auto prog = program_measurement(layout, bases);
  for (int q = 0; q < 3; ++q) {
    const Cell* c = find_cell(prog, kMeasurementLayer, 2 * q);
    REQUIRE(c != nullptr);
    CHECK(c->role == CellRole::measurement);
    CHECK(c->rbs.theta == basis_rotation(bases[static_cast<std::size_t>(q)]).theta);
  }
  const ComplexMatrix u = compose_mesh(prog);
  CHECK((u.adjoint() * u - ComplexMatrix::Identity(8, 8)).norm() < 1e-10);
  CHECK(basis_letter(parse_basis('y')) == 'Y');
  CHECK_THROWS_AS(parse_basis('Q'), ParameterError);
}

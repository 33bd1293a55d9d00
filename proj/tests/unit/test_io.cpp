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

#include <charconv>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "tqst/error.hpp"
#include "tqst/io.hpp"

using namespace tqst;
namespace fs = std::filesystem;

TEST_CASE("shortest round-trip doubles") {
  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(-2.0) == "-2");
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng) * std::pow(10.0, k % 11 - 5);
    const auto s = io::format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
}

TEST_CASE("FNV-1a reference values") {
  CHECK(io::fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(io::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(io::hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("text files and hashes") {
  const fs::path dir = fs::temp_directory_path() / "tqst_io_test" / "nested";
  fs::remove_all(dir.parent_path());
  const auto hash = io::write_text_file(dir / "a.txt", "hello\n");
  CHECK(hash == io::hex64(io::fnv1a("hello\n")));
  CHECK(io::read_text_file(dir / "a.txt") == "hello\n");
  CHECK_THROWS_AS(io::read_text_file(dir / "missing.txt"), IoError);
  io::write_text_file(dir / "bad.json", "{not json");
  CHECK_THROWS_AS(io::read_json_file(dir / "bad.json"), IoError);
  fs::remove_all(dir.parent_path());
}

TEST_CASE("layout round trip") {
  auto layout = mesh::preset_layout(mesh::PresetStateId::w3());
  layout.cells[3].coupler = {0.51, 0.57};
  const auto back = io::layout_from_json(io::layout_to_json(layout));
  REQUIRE(back.cells.size() == layout.cells.size());
  CHECK(back.modes == layout.modes);
  for (std::size_t k = 0; k < layout.cells.size(); ++k) {
    CHECK(back.cells[k].layer == layout.cells[k].layer);
    CHECK(back.cells[k].rbs.theta == layout.cells[k].rbs.theta);
    CHECK(back.cells[k].rbs.phi == layout.cells[k].rbs.phi);
    CHECK(back.cells[k].rbs.top_mode == layout.cells[k].rbs.top_mode);
    CHECK(back.cells[k].coupler == layout.cells[k].coupler);
    CHECK(back.cells[k].role == layout.cells[k].role);
  }
  CHECK(io::dump(io::layout_to_json(back)) == io::dump(io::layout_to_json(layout)));
}

TEST_CASE("noise round trip and shorthand forms") {
  auto np = noise::NoiseParams::lab();
  np.eta = 0.8;
  np.detector_eff = {0.9, 0.95};
  np.coupler_default = mesh::CouplerSpec{0.52, 0.54};
  const auto back = io::noise_from_json(io::noise_to_json(np));
  CHECK(back.g2 == np.g2);
  CHECK(back.eta == np.eta);
  CHECK(back.hom_visibility == np.hom_visibility);
  CHECK(back.detector_eff == np.detector_eff);
  REQUIRE(back.coupler_default.has_value());
  CHECK(*back.coupler_default == *np.coupler_default);
  CHECK(back.coupler_overrides.size() == np.coupler_overrides.size());
  CHECK(io::dump(io::noise_to_json(back)) == io::dump(io::noise_to_json(np)));

  const auto j = io::Json::parse(R"({"g2":0.0,"hom_visibilities":[[1,0.8],[0.8,1]],"detector_eff":0.5})");
  const auto parsed = io::noise_from_json(j);
  REQUIRE(parsed.hom_visibilities.rows() == 2);
  CHECK(parsed.hom_visibilities(0, 1) == 0.8);
  CHECK(parsed.detector_efficiency(7) == 0.5);

  CHECK_THROWS_AS(io::noise_from_json(io::Json::parse(R"({"g2":"high"})")), ContractError);
}

TEST_CASE("count record round trip") {
  tomo::CountRecord rec;
  rec.n_qubits = 2;
  rec.seed = 77;
  rec.provenance = "unit";
  rec.settings.push_back({tomo::parse_bases("ZZ"), 10, {1, 2, 3, 4}, 0.25});
  rec.settings.push_back({tomo::parse_bases("XY"), 10, {0, 0, 5, 5}, 1.0});
  const auto back = io::count_record_from_json(io::count_record_to_json(rec));
  CHECK(back.n_qubits == 2);
  CHECK(back.seed == 77);
  REQUIRE(back.settings.size() == 2);
  CHECK(tomo::to_string(back.settings[1].bases) == "XY");
  CHECK(back.settings[0].counts == rec.settings[0].counts);
  CHECK(back.settings[0].accepted == 0.25);
}

TEST_CASE("matrix CSV") {
  RealMatrix m(2, 2);
  m << 1, 0.5, -0.25, 0;
  CHECK(io::matrix_csv(m) == "1,0.5\n-0.25,0\n");
}

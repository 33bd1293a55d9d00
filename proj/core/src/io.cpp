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

#include "tqst/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "tqst/error.hpp"

namespace tqst::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("write failed for " + path.string());
  return hex64(fnv1a(contents));
}

Json read_json_file(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

template <typename T>
T field(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw IoError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(where + ": field '" + key + "': " + e.what());
  }
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return field<T>(j, key, where);
}

const char* role_name(mesh::CellRole r) {
  switch (r) {
    case mesh::CellRole::generation: return "generation";
    case mesh::CellRole::measurement: return "measurement";
    case mesh::CellRole::identity: break;
  }
  return "identity";
}

mesh::CellRole parse_role(const std::string& s) {
  if (s == "generation") return mesh::CellRole::generation;
  if (s == "measurement") return mesh::CellRole::measurement;
  if (s == "identity") return mesh::CellRole::identity;
  throw LayoutError("unknown cell role '" + s + "'");
}

RealMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw IoError(where + ": expected a non-empty matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  RealMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw IoError(where + ": ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

}  // namespace

Json matrix_to_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json layout_to_json(const mesh::MeshLayout& layout) {
  Json cells = Json::array();
  for (const auto& c : layout.cells) {
    cells.push_back({{"layer", c.layer},
                     {"modes", {c.rbs.top_mode, c.rbs.top_mode + 1}},
                     {"theta", c.rbs.theta},
                     {"phi", c.rbs.phi},
                     {"r1", c.coupler.r1},
                     {"r2", c.coupler.r2},
                     {"role", role_name(c.role)}});
  }
  return {{"m", layout.modes}, {"cells", cells}};
}

mesh::MeshLayout layout_from_json(const Json& j) {
  const std::string where = "layout";
  mesh::MeshLayout layout;
  try {
    layout.modes = field<int>(j, "m", where);
    for (const auto& c : field<Json>(j, "cells", where)) {
      mesh::Cell cell;
      cell.layer = field<int>(c, "layer", where);
      const auto modes = field<std::vector<int>>(c, "modes", where);
      if (modes.size() != 2 || modes[1] != modes[0] + 1) {
        throw LayoutError("layout: cell modes must be adjacent [a, a+1]");
      }
      cell.rbs.top_mode = modes[0];
      cell.rbs.theta = field<double>(c, "theta", where);
      cell.rbs.phi = field<double>(c, "phi", where);
      cell.coupler.r1 = field_or<double>(c, "r1", 0.5, where);
      cell.coupler.r2 = field_or<double>(c, "r2", 0.5, where);
      cell.role = parse_role(field_or<std::string>(c, "role", "generation", where));
      layout.cells.push_back(cell);
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(where + ": " + e.what());
  }
  mesh::validate(layout);
  return layout;
}

Json noise_to_json(const noise::NoiseParams& np) {
  Json j;
  j["g2"] = np.g2;
  j["p0"] = np.p0;
  if (np.hom_visibilities.size() > 0) {
    j["hom_visibilities"] = matrix_to_json(np.hom_visibilities);
  } else {
    j["hom_visibilities"] = np.hom_visibility;
  }
  j["eta"] = np.eta;
  j["detector_eff"] = np.detector_eff.empty() ? Json(1.0) : Json(np.detector_eff);
  if (np.coupler_default) {
    j["coupler_default"] = {{"r1", np.coupler_default->r1}, {"r2", np.coupler_default->r2}};
  } else {
    j["coupler_default"] = nullptr;
  }
  Json overrides = Json::array();
  for (const auto& o : np.coupler_overrides) {
    overrides.push_back(
        {{"layer", o.layer}, {"top_mode", o.top_mode}, {"r1", o.coupler.r1}, {"r2", o.coupler.r2}});
  }
  j["coupler_overrides"] = overrides;
  return j;
}

noise::NoiseParams noise_from_json(const Json& j) {
  const std::string where = "noise";
  noise::NoiseParams np;
  try {
    np.g2 = field_or<double>(j, "g2", 0.0, where);
    np.p0 = field_or<double>(j, "p0", 0.0, where);
    if (j.contains("hom_visibilities") && !j.at("hom_visibilities").is_null()) {
      const auto& v = j.at("hom_visibilities");
      if (v.is_number()) {
        np.hom_visibility = v.get<double>();
      } else {
        np.hom_visibilities = matrix_from_json(v, where + ".hom_visibilities");
      }
    }
    np.eta = field_or<double>(j, "eta", 1.0, where);
    if (j.contains("detector_eff") && !j.at("detector_eff").is_null()) {
      const auto& d = j.at("detector_eff");
      if (d.is_number()) {
        const double e = d.get<double>();
        if (e != 1.0) np.detector_eff.assign(32, e);
      } else {
        np.detector_eff = d.get<std::vector<double>>();
      }
    }
    if (j.contains("coupler_default") && !j.at("coupler_default").is_null()) {
      const auto& c = j.at("coupler_default");
      np.coupler_default = mesh::CouplerSpec{field<double>(c, "r1", where), field<double>(c, "r2", where)};
    }
    if (j.contains("coupler_overrides")) {
      for (const auto& o : j.at("coupler_overrides")) {
        noise::CouplerOverride co;
        co.layer = field<int>(o, "layer", where);
        co.top_mode = field<int>(o, "top_mode", where);
        co.coupler.r1 = field<double>(o, "r1", where);
        co.coupler.r2 = field<double>(o, "r2", where);
        np.coupler_overrides.push_back(co);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(where + ": " + e.what());
  }
  np.validate();
  return np;
}

Json count_record_to_json(const tomo::CountRecord& record) {
  Json settings = Json::array();
  for (const auto& s : record.settings) {
    Json bases = Json::array();
    for (auto b : s.bases) bases.push_back(std::string(1, mesh::basis_letter(b)));
    settings.push_back({{"bases", bases}, {"shots", s.shots}, {"counts", s.counts}, {"accepted", s.accepted}});
  }
  return {{"n_qubits", record.n_qubits},
          {"settings", settings},
          {"seed", record.seed},
          {"provenance", record.provenance}};
}

tomo::CountRecord count_record_from_json(const Json& j) {
  const std::string where = "count record";
  tomo::CountRecord rec;
  try {
    rec.n_qubits = field<int>(j, "n_qubits", where);
    rec.seed = field_or<std::uint64_t>(j, "seed", 0, where);
    rec.provenance = field_or<std::string>(j, "provenance", "file", where);
    for (const auto& s : field<Json>(j, "settings", where)) {
      tomo::SettingCounts sc;
      for (const auto& b : field<std::vector<std::string>>(s, "bases", where)) {
        if (b.size() != 1) throw IoError(where + ": basis must be one of X, Y, Z");
        sc.bases.push_back(mesh::parse_basis(b[0]));
      }
      sc.shots = field<std::uint64_t>(s, "shots", where);
      sc.counts = field<std::vector<double>>(s, "counts", where);
      sc.accepted = field_or<double>(s, "accepted", 1.0, where);
      rec.settings.push_back(std::move(sc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(where + ": " + e.what());
  }
  rec.validate();
  return rec;
}

Json reconstruction_to_json(const tomo::TqstResult& result) {
  const auto& rho = result.rho.matrix();
  Json pairs = Json::array();
  for (const auto& [i, j] : result.plan.pairs) pairs.push_back({i, j});
  Json settings = Json::array();
  for (const auto& s : result.plan.settings) settings.push_back(tomo::to_string(s));
  const auto& d = result.diagnostics;
  Json diag = {{"threshold", d.threshold},
               {"gini", d.gini},
               {"N_t", d.n_t},
               {"N_0", d.n_0},
               {"settings", d.settings},
               {"raw_diagonal_norm", d.raw_diagonal_norm},
               {"discard_mass", d.discard_mass},
               {"clip_events", d.clip_events},
               {"mle_objective", d.mle.objective},
               {"mle_best_start", d.mle.best_start},
               {"mle_converged_starts", d.mle.converged_starts},
               {"mle_iterations", d.mle.iterations}};
  return {{"dims", {rho.rows(), rho.cols()}},
          {"rho_re", matrix_to_json(rho.real())},
          {"rho_im", matrix_to_json(rho.imag())},
          {"plan", {{"pairs", pairs}, {"N_t", result.plan.projector_count()}, {"settings", settings}}},
          {"diagnostics", diag}};
}

std::string matrix_csv(const RealMatrix& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace tqst::io

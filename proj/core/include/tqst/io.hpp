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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "tqst/density_matrix.hpp"
#include "tqst/mesh.hpp"
#include "tqst/noise.hpp"
#include "tqst/tomo.hpp"

namespace tqst::io {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form; locale independent.
std::string format_double(double v);

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

std::string read_text_file(const std::filesystem::path& path);
/// Writes the file (creating parent directories) and returns its FNV-1a hash.
std::string write_text_file(const std::filesystem::path& path, const std::string& contents);
Json read_json_file(const std::filesystem::path& path);
std::string dump(const Json& j);

// Layout: {m, cells:[{layer, modes:[a,a+1], theta, phi, r1, r2, role}]}
Json layout_to_json(const mesh::MeshLayout& layout);
mesh::MeshLayout layout_from_json(const Json& j);

// Noise: {g2, p0, hom_visibilities (number or matrix), eta, detector_eff
// (number or per-mode list), coupler_default {r1, r2} | null,
// coupler_overrides:[{layer, top_mode, r1, r2}]}
Json noise_to_json(const noise::NoiseParams& np);
noise::NoiseParams noise_from_json(const Json& j);

// Counts: {n_qubits, settings:[{bases:["X",...], shots, counts:[...]}], seed, provenance}
Json count_record_to_json(const tomo::CountRecord& record);
tomo::CountRecord count_record_from_json(const Json& j);

Json matrix_to_json(const RealMatrix& m);

// Reconstruction: {dims, rho_re, rho_im, plan:{pairs, N_t, settings}, diagnostics}
Json reconstruction_to_json(const tomo::TqstResult& result);

/// Real and imaginary parts as separate CSV blocks (one matrix each).
std::string matrix_csv(const RealMatrix& m);

}  // namespace tqst::io

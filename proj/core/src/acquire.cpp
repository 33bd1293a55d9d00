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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "tqst/stategen.hpp"
#include "tqst/tomo.hpp"

namespace tqst::tomo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<double> born_probabilities(const DensityMatrix& rho, const LocalBases& bases) {
  const ComplexMatrix u = setting_unitary(bases);
  if (u.rows() != rho.dim()) throw ShapeError("setting does not match the state dimension");
  const ComplexMatrix r = u * rho.matrix() * u.adjoint();
  std::vector<double> p(static_cast<std::size_t>(r.rows()));
  for (Eigen::Index b = 0; b < r.rows(); ++b) p[static_cast<std::size_t>(b)] = std::max(0.0, r(b, b).real());
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= total;
  return p;
}

std::vector<double> drop_roundoff(std::vector<double> p) {
  for (double& x : p) {
    if (x < kRoundoffProbability) x = 0.0;
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (total > 0.0) {
    for (double& x : p) x /= total;
  }
  return p;
}

}  // namespace

const SettingCounts* CountRecord::find(const LocalBases& bases) const {
  for (const auto& s : settings) {
    if (s.bases == bases) return &s;
  }
  return nullptr;
}

void CountRecord::validate() const {
  if (n_qubits < 1 || n_qubits > 8) throw ContractError("count record: n_qubits out of range");
  const std::size_t dim = std::size_t{1} << n_qubits;
  for (const auto& s : settings) {
    if (s.bases.size() != static_cast<std::size_t>(n_qubits)) {
      throw ContractError("count record: setting " + to_string(s.bases) + " has the wrong length");
    }
    if (s.counts.size() != dim) {
      throw ContractError("count record: setting " + to_string(s.bases) + " needs " +
                          std::to_string(dim) + " counts");
    }
    double total = 0.0;
    for (double c : s.counts) {
      if (!(c >= 0.0)) throw ContractError("count record: negative count");
      total += c;
    }
    if (s.shots < 1) throw ContractError("count record: shots must be >= 1");
    if (std::abs(total - static_cast<double>(s.shots)) > 1e-6 * static_cast<double>(s.shots)) {
      throw ContractError("count record: counts of " + to_string(s.bases) + " do not sum to shots");
    }
  }
}

std::vector<double> setting_probabilities(const Source& source, int n_qubits, const LocalBases& bases,
                                          double* accepted) {
  if (bases.size() != static_cast<std::size_t>(n_qubits)) {
    throw ContractError("setting " + to_string(bases) + " does not match " + std::to_string(n_qubits) +
                        " qubits");
  }
  if (accepted) *accepted = 1.0;
  if (const auto* exact = std::get_if<ExactSource>(&source)) {
    return drop_roundoff(born_probabilities(exact->rho, bases));
  }
  if (const auto* rec = std::get_if<RecordSource>(&source)) {
    const auto* s = rec->record.find(bases);
    if (!s) throw AcquisitionError("recorded data has no setting " + to_string(bases));
    std::vector<double> p(s->counts.size());
    for (std::size_t b = 0; b < p.size(); ++b) p[b] = s->counts[b] / static_cast<double>(s->shots);
    return p;
  }
  const auto& model = std::get<ModelSource>(source);
  const auto spec = stategen::DualRailSpec::for_qubits(n_qubits, model.layout.modes);
  const auto programmed = mesh::program_measurement(model.layout, bases);
  const auto dist = noise::noisy_event_distribution(programmed, spec, model.noise);
  try {
    auto p = drop_roundoff(dist.normalized_basis_probabilities(spec));
    if (accepted) *accepted = dist.valid_mass();
    return p;
  } catch (const ModelError&) {
    throw AcquisitionError("setting " + to_string(bases) + " has no valid-pattern mass");
  }
}

std::uint64_t setting_stream_seed(std::uint64_t master_seed, const LocalBases& bases) {
  return splitmix64(splitmix64(master_seed) ^ fnv1a(to_string(bases)));
}

std::vector<double> sample_multinomial(std::span<const double> probabilities, std::uint64_t shots,
                                       std::uint64_t stream_seed) {
  std::mt19937_64 rng(stream_seed);
  std::vector<double> counts(probabilities.size(), 0.0);
  std::uint64_t remaining = shots;
  double mass = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  for (std::size_t k = 0; k < probabilities.size() && remaining > 0; ++k) {
    const double p = std::max(0.0, probabilities[k]);
    std::uint64_t draw = 0;
    if (k + 1 == probabilities.size()) {
      draw = remaining;
    } else if (p > 0.0 && mass > 0.0) {
      const double q = std::min(1.0, p / mass);
      draw = q >= 1.0 ? remaining : std::binomial_distribution<std::uint64_t>(remaining, q)(rng);
    }
    counts[k] = static_cast<double>(draw);
    remaining -= draw;
    mass -= p;
  }
  return counts;
}

Acquirer::Acquirer(Source source, int n_qubits, AcquireOptions options)
    : source_(std::move(source)), n_qubits_(n_qubits), options_(options) {
  if (n_qubits < 1 || n_qubits > 8) throw SizeError("acquisition supports 1 to 8 qubits");
  if (options_.shots < 1) throw ContractError("shots must be >= 1");
  if (const auto* exact = std::get_if<ExactSource>(&source_)) {
    if (exact->rho.n_qubits() != n_qubits) throw ShapeError("source state has the wrong size");
  } else if (const auto* rec = std::get_if<RecordSource>(&source_)) {
    rec->record.validate();
    if (rec->record.n_qubits != n_qubits) throw ShapeError("recorded data has the wrong size");
  } else {
    const auto& model = std::get<ModelSource>(source_);
    mesh::validate(model.layout);
    model.noise.validate();
  }
}

const SettingCounts& Acquirer::counts(const LocalBases& bases) {
  const auto key = to_string(bases);
  if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  SettingCounts sc;
  sc.bases = bases;
  if (const auto* rec = std::get_if<RecordSource>(&source_)) {
    const auto* s = rec->record.find(bases);
    if (!s) throw AcquisitionError("recorded data has no setting " + key);
    sc = *s;
  } else {
    const auto p = setting_probabilities(source_, n_qubits_, bases, &sc.accepted);
    sc.shots = options_.shots;
    if (options_.exact) {
      sc.counts.resize(p.size());
      for (std::size_t b = 0; b < p.size(); ++b) sc.counts[b] = p[b] * static_cast<double>(sc.shots);
    } else {
      sc.counts = sample_multinomial(p, sc.shots, setting_stream_seed(options_.seed, bases));
    }
  }
  return cache_.emplace(key, std::move(sc)).first->second;
}

CountRecord Acquirer::record(const std::vector<LocalBases>& settings) {
  CountRecord out;
  out.n_qubits = n_qubits_;
  out.seed = options_.seed;
  if (std::holds_alternative<ExactSource>(source_)) {
    out.provenance = options_.exact ? "exact-state probabilities" : "simulated: exact state";
  } else if (std::holds_alternative<ModelSource>(source_)) {
    out.provenance = options_.exact ? "noise-model probabilities" : "simulated: noise model";
  } else {
    out.provenance = std::get<RecordSource>(source_).record.provenance;
  }
  for (const auto& s : settings) out.settings.push_back(counts(s));
  return out;
}

std::vector<double> Acquirer::detector_efficiencies() const {
  const auto* model = std::get_if<ModelSource>(&source_);
  if (!model) return {};
  std::vector<double> eff(static_cast<std::size_t>(model->layout.modes));
  for (int j = 0; j < model->layout.modes; ++j) {
    eff[static_cast<std::size_t>(j)] = model->noise.detector_efficiency(j);
  }
  return eff;
}

CountRecord acquire_counts(const ProjectorPlan& plan, const Source& source, const AcquireOptions& options) {
  Acquirer acq(source, plan.n_qubits, options);
  return acq.record(plan.settings);
}

std::vector<double> setting_frequencies(const SettingCounts& counts, int n_qubits,
                                        std::span<const double> efficiencies) {
  const auto spec = stategen::DualRailSpec{n_qubits, 2 * n_qubits};
  std::vector<double> f(counts.counts.size());
  for (std::size_t b = 0; b < f.size(); ++b) {
    double eff = 1.0;
    if (!efficiencies.empty()) {
      const auto mask = noise::basis_index_to_click_pattern(b, spec);
      for (std::size_t j = 0; j < efficiencies.size(); ++j) {
        if ((mask >> j) & 1U) eff *= efficiencies[j];
      }
    }
    f[b] = counts.counts[b] / eff;
  }
  const double total = std::accumulate(f.begin(), f.end(), 0.0);
  if (!(total > 0.0)) throw AcquisitionError("setting " + to_string(counts.bases) + " has no counts");
  for (double& x : f) x /= total;
  return f;
}

}  // namespace tqst::tomo

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
#include <string>

#include "tqst/stategen.hpp"
#include "tqst/tomo.hpp"

namespace tqst::tomo {

ProjectorValues estimate_projector_values(const ProjectorPlan& plan, const CountRecord& counts,
                                          std::span<const double> efficiencies) {
  const int n = plan.n_qubits;
  if (counts.n_qubits != n) throw ShapeError("count record and plan disagree on n_qubits");
  for (const auto& s : plan.settings) {
    if (!counts.find(s)) throw ContractError("count record lacks setting " + to_string(s));
  }
  const auto* computational = counts.find(computational_setting(n));
  if (!computational) throw ContractError("count record lacks the computational setting");

  std::vector<std::vector<double>> freqs;
  freqs.reserve(counts.settings.size());
  for (const auto& s : counts.settings) freqs.push_back(setting_frequencies(s, n, efficiencies));
  const auto& diag = freqs[static_cast<std::size_t>(computational - counts.settings.data())];

  std::map<PauliString, double> expectation;
  auto expect = [&](const PauliString& p) {
    if (const auto it = expectation.find(p); it != expectation.end()) return it->second;
    if (std::all_of(p.begin(), p.end(), [](Pauli x) { return x == Pauli::I; })) {
      return expectation[p] = 1.0;
    }
    double num = 0.0;
    double shots = 0.0;
    for (std::size_t k = 0; k < counts.settings.size(); ++k) {
      const auto& s = counts.settings[k];
      if (!covers(s.bases, p)) continue;
      double e = 0.0;
      for (std::size_t b = 0; b < freqs[k].size(); ++b) e += outcome_sign(p, b) * freqs[k][b];
      num += e * static_cast<double>(s.shots);
      shots += static_cast<double>(s.shots);
    }
    if (shots == 0.0) throw ContractError("no recorded setting reveals " + to_string(p));
    return expectation[p] = num / shots;
  };

  ProjectorValues out;
  out.values.reserve(plan.projectors.size());
  for (const auto& proj : plan.projectors) {
    double v = 0.0;
    if (proj.kind == ProjectorKind::diagonal) {
      v = diag[proj.i];
    } else {
      for (const auto& t : proj.terms) v += (t.coefficient * expect(t.string)).real();
    }
    if (v < 0.0 || v > 1.0) {
      ++out.clip_events;
      v = std::clamp(v, 0.0, 1.0);
    }
    out.values.push_back(v);
  }
  return out;
}

DiagonalVector measure_diagonal(Acquirer& acquirer, double* raw_norm) {
  const int n = acquirer.n_qubits();
  const auto& sc = acquirer.counts(computational_setting(n));
  const auto eff = acquirer.detector_efficiencies();
  if (raw_norm) {
    // Efficiency-corrected counts over shots, before renormalization.
    const auto spec = stategen::DualRailSpec{n, 2 * n};
    double total = 0.0;
    for (std::size_t b = 0; b < sc.counts.size(); ++b) {
      double e = 1.0;
      const auto mask = noise::basis_index_to_click_pattern(b, spec);
      for (std::size_t j = 0; j < eff.size(); ++j) {
        if ((mask >> j) & 1U) e *= eff[j];
      }
      total += sc.counts[b] / e;
    }
    *raw_norm = total / static_cast<double>(sc.shots);
  }
  return setting_frequencies(sc, n, eff);
}

TqstResult reconstruct(const ProjectorPlan& plan, Acquirer& acquirer, const MleOptions& mle) {
  if (plan.n_qubits != acquirer.n_qubits()) throw ShapeError("plan and data disagree on n_qubits");
  const auto record = acquirer.record(plan.settings);
  const auto eff = acquirer.detector_efficiencies();
  const auto values = estimate_projector_values(plan, record, eff);
  auto fit = mle_reconstruct(plan, values.values, mle);

  TqstDiagnostics d;
  d.n_t = plan.projector_count();
  d.n_0 = std::size_t{1} << (2 * plan.n_qubits);
  d.settings = plan.setting_count();
  d.threshold = plan.threshold;
  d.clip_events = values.clip_events;
  double discard = 0.0;
  for (const auto& s : record.settings) discard += 1.0 - s.accepted;
  d.discard_mass = discard / static_cast<double>(record.settings.size());
  d.mle = fit.diagnostics;

  DiagonalVector diag = measure_diagonal(acquirer, &d.raw_diagonal_norm);
  d.gini = gini_index(diag);
  return TqstResult{std::move(fit.rho), plan, std::move(diag), d};
}

TqstResult run_tqst(Acquirer& acquirer, ThresholdMode mode, const MleOptions& mle) {
  const int n = acquirer.n_qubits();
  const auto diag = measure_diagonal(acquirer);
  double t = mode.t;
  if (mode.automatic) {
    t = threshold(diag, n);
  } else if (!(t >= 0.0)) {
    throw ContractError("threshold must be >= 0");
  }
  return reconstruct(build_plan(diag, t, n), acquirer, mle);
}

TqstResult run_qst(Acquirer& acquirer, const MleOptions& mle) {
  return run_tqst(acquirer, ThresholdMode::fixed(0.0), mle);
}

}  // namespace tqst::tomo

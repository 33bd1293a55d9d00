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

#include "tqst/noise.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <Eigen/Eigenvalues>

#include "tqst/error.hpp"
#include "tqst/pauli.hpp"

namespace tqst::noise {

namespace {

constexpr double kGramTolerance = 1e-10;
constexpr double kImaginaryResidue = 1e-10;

// Permutations of the photon labels with nonzero overlap weight, together
// with the input-state normalization <in|in>.
struct PartialDistKernel {
  fock::AssignmentList input_modes;
  std::vector<std::vector<int>> perms;
  std::vector<double> weights;
  double input_norm = 1.0;

  PartialDistKernel(const fock::AssignmentList& modes, const GramMatrix& s) : input_modes(modes) {
    const int n = static_cast<int>(modes.size());
    if (s.size() != n) {
      throw ShapeError("Gram matrix is " + std::to_string(s.size()) + "x" +
                       std::to_string(s.size()) + " for " + std::to_string(n) + " photons");
    }
    if (n > kMaxDistinguishabilityPhotons) {
      throw SizeError("partial distinguishability supports at most " +
                      std::to_string(kMaxDistinguishabilityPhotons) + " photons");
    }
    std::vector<int> pi(static_cast<std::size_t>(n));
    std::iota(pi.begin(), pi.end(), 0);
    do {
      double w = 1.0;
      for (int j = 0; j < n && w != 0.0; ++j) w *= s(j, pi[static_cast<std::size_t>(j)]);
      if (std::abs(w) > 1e-300) {
        perms.push_back(pi);
        weights.push_back(w);
      }
    } while (std::next_permutation(pi.begin(), pi.end()));

    // Photons sharing an input mode: <in|in> = prod over groups of per(S_group).
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return modes[static_cast<std::size_t>(a)] < modes[static_cast<std::size_t>(b)];
    });
    for (std::size_t g = 0; g < order.size();) {
      std::size_t e = g;
      while (e < order.size() && modes[static_cast<std::size_t>(order[e])] ==
                                     modes[static_cast<std::size_t>(order[g])]) {
        ++e;
      }
      if (e - g > 1) {
        const auto k = static_cast<Eigen::Index>(e - g);
        ComplexMatrix sub(k, k);
        for (Eigen::Index a = 0; a < k; ++a) {
          for (Eigen::Index b = 0; b < k; ++b) {
            sub(a, b) = s(order[g + static_cast<std::size_t>(a)], order[g + static_cast<std::size_t>(b)]);
          }
        }
        input_norm *= fock::permanent(sub).real();
      }
      g = e;
    }
  }

  Complex evaluate(const ComplexMatrix& u, const fock::FockConfig& output) const {
    const auto out_modes = fock::to_assignment(output);
    const auto n = static_cast<Eigen::Index>(input_modes.size());
    if (static_cast<Eigen::Index>(out_modes.size()) != n) {
      throw ContractError("output has " + std::to_string(out_modes.size()) + " photons, input has " +
                          std::to_string(n));
    }
    ComplexMatrix m(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index j = 0; j < n; ++j) {
        m(k, j) = u(out_modes[static_cast<std::size_t>(k)], input_modes[static_cast<std::size_t>(j)]);
      }
    }
    Complex total{0.0, 0.0};
    ComplexMatrix a(n, n);
    for (std::size_t p = 0; p < perms.size(); ++p) {
      const auto& pi = perms[p];
      for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index j = 0; j < n; ++j) {
          a(k, j) = m(k, j) * std::conj(m(k, pi[static_cast<std::size_t>(j)]));
        }
      }
      total += weights[p] * fock::permanent(a);
    }
    return total / (output.factorial_product() * input_norm);
  }

  double probability(const ComplexMatrix& u, const fock::FockConfig& output) const {
    const Complex p = evaluate(u, output);
    if (std::abs(p.imag()) > kImaginaryResidue * std::max(1.0, std::abs(p.real()))) {
      throw NumericalConsistencyError("partial-distinguishability probability has imaginary part " +
                                      std::to_string(p.imag()));
    }
    return std::max(0.0, p.real());
  }
};

void check_unitary_shape(const ComplexMatrix& u, int modes) {
  if (u.rows() != u.cols() || u.rows() != modes) {
    throw ShapeError("U is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                     " for " + std::to_string(modes) + " modes");
  }
}

void check_input_modes(const fock::AssignmentList& modes, int m) {
  for (int a : modes) {
    if (a < 0 || a >= m) throw ShapeError("input mode " + std::to_string(a) + " out of range");
  }
}

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

GramMatrix GramMatrix::all_ones(int n) { return {RealMatrix::Ones(n, n)}; }

GramMatrix GramMatrix::identity(int n) { return {RealMatrix::Identity(n, n)}; }

GramMatrix GramMatrix::uniform(int n, double overlap) {
  RealMatrix v = RealMatrix::Constant(n, n, overlap);
  v.diagonal().setOnes();
  GramMatrix g{v};
  g.validate();
  return g;
}

void GramMatrix::validate() const {
  if (values.rows() != values.cols()) throw ModelError("Gram matrix is not square");
  const auto n = values.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(values(i, i) - 1.0) > kGramTolerance) throw ModelError("Gram diagonal must be 1");
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = values(i, j);
      if (!std::isfinite(v) || v < -kGramTolerance || v > 1.0 + kGramTolerance) {
        throw ModelError("Gram entry outside [0,1]");
      }
      if (std::abs(v - values(j, i)) > kGramTolerance) throw ModelError("Gram matrix is not symmetric");
    }
  }
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(values, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kGramTolerance) {
      throw ModelError("Gram matrix is not positive semi-definite");
    }
  }
}

GramMatrix GramMatrix::with_distinguishable_photon() const {
  const auto n = values.rows();
  RealMatrix v = RealMatrix::Zero(n + 1, n + 1);
  v.topLeftCorner(n, n) = values;
  v(n, n) = 1.0;
  return {v};
}

GramMatrix GramMatrix::restricted(std::span<const int> photons) const {
  const auto k = static_cast<Eigen::Index>(photons.size());
  RealMatrix v(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      v(a, b) = values(photons[static_cast<std::size_t>(a)], photons[static_cast<std::size_t>(b)]);
    }
  }
  return {v};
}

OverlapResult overlaps_from_visibilities(const RealMatrix& visibilities, double g2) {
  if (visibilities.rows() != visibilities.cols()) throw ShapeError("visibility matrix is not square");
  if (!(g2 >= 0.0 && g2 < 1.0)) throw ParameterError("g2 must lie in [0,1)");
  const auto n = visibilities.rows();
  OverlapResult out;
  out.gram.values = RealMatrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      double m = (visibilities(i, j) + g2) / (1.0 - g2);
      if (!std::isfinite(m)) throw ParameterError("visibility is not finite");
      if (m < 0.0 || m > 1.0) {
        out.clipped = true;
        m = std::clamp(m, 0.0, 1.0);
      }
      out.gram.values(i, j) = std::sqrt(m);
    }
  }
  out.gram.validate();
  return out;
}

double configuration_probability(const ComplexMatrix& u, const fock::AssignmentList& input_modes,
                                 const GramMatrix& s, const fock::FockConfig& output) {
  check_unitary_shape(u, output.modes());
  check_input_modes(input_modes, output.modes());
  return PartialDistKernel(input_modes, s).probability(u, output);
}

Distribution partial_dist_distribution(const ComplexMatrix& u, const fock::FockConfig& input,
                                       const GramMatrix& s) {
  check_unitary_shape(u, input.modes());
  return partial_dist_distribution(u, fock::to_assignment(input), s);
}

Distribution partial_dist_distribution(const ComplexMatrix& u,
                                       const fock::AssignmentList& input_modes,
                                       const GramMatrix& s) {
  const int m = static_cast<int>(u.rows());
  check_unitary_shape(u, m);
  check_input_modes(input_modes, m);
  const PartialDistKernel kernel(input_modes, s);
  Distribution out;
  for (auto& t : fock::enumerate_configurations(static_cast<int>(input_modes.size()), m)) {
    const double p = kernel.probability(u, t);
    out.emplace_back(std::move(t), p);
  }
  return out;
}

EmissionProbabilities multiphoton_mixture(double g2, double p0) {
  if (!(g2 >= 0.0 && g2 < 0.5)) throw ParameterError("g2 must lie in [0, 0.5)");
  if (!(p0 >= 0.0 && p0 < 1.0)) throw ParameterError("p0 must lie in [0, 1)");
  EmissionProbabilities e;
  e.p0 = p0;
  if (g2 == 0.0) {
    e.p1 = 1.0 - p0;
    return e;
  }
  // g2 (p1 + 2 p2)^2 = 2 p2 with p1 + 2 p2 = 1 - p0 + p2.
  const double q = 1.0 - p0;
  auto f = [&](double x) { return g2 * (q + x) * (q + x) - 2.0 * x; };
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      f, 0.0, q, f(0.0), f(q), boost::math::tools::eps_tolerance<double>(52), iters);
  e.p2 = 0.5 * (lo + hi);
  e.p1 = q - e.p2;
  return e;
}

NoiseParams NoiseParams::lab(std::uint64_t coupler_seed) {
  NoiseParams np;
  np.g2 = kLabG2;
  np.hom_visibility = kLabVisibility;
  std::mt19937_64 rng(coupler_seed);
  std::uniform_real_distribution<double> r(kLabCouplerMin, kLabCouplerMax);
  for (const auto& cell : mesh::rectangular_layout(mesh::kChipModes, mesh::kChipLayers).cells) {
    CouplerOverride o;
    o.layer = cell.layer;
    o.top_mode = cell.rbs.top_mode;
    o.coupler.r1 = r(rng);
    o.coupler.r2 = r(rng);
    np.coupler_overrides.push_back(o);
  }
  return np;
}

void NoiseParams::validate() const {
  if (!(g2 >= 0.0 && g2 < 0.5)) throw ParameterError("g2 must lie in [0, 0.5)");
  if (!(p0 >= 0.0 && p0 < 1.0)) throw ParameterError("p0 must lie in [0, 1)");
  if (!in_unit_interval(hom_visibility)) throw ParameterError("HOM visibility must lie in [0,1]");
  if (hom_visibilities.size() > 0) {
    if (hom_visibilities.rows() != hom_visibilities.cols()) {
      throw ParameterError("HOM visibility matrix is not square");
    }
    for (Eigen::Index i = 0; i < hom_visibilities.rows(); ++i) {
      for (Eigen::Index j = 0; j < hom_visibilities.cols(); ++j) {
        if (i != j && !in_unit_interval(hom_visibilities(i, j))) {
          throw ParameterError("HOM visibility must lie in [0,1]");
        }
        if (hom_visibilities(i, j) != hom_visibilities(j, i)) {
          throw ParameterError("HOM visibility matrix is not symmetric");
        }
      }
    }
  }
  if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("eta must lie in (0,1]");
  for (double e : detector_eff) {
    if (!(e > 0.0 && e <= 1.0)) throw ParameterError("detector efficiency must lie in (0,1]");
  }
  auto check_coupler = [](const mesh::CouplerSpec& c) {
    if (!in_unit_interval(c.r1) || !in_unit_interval(c.r2)) {
      throw ParameterError("coupler reflectivity must lie in [0,1]");
    }
  };
  if (coupler_default) check_coupler(*coupler_default);
  for (const auto& o : coupler_overrides) {
    if (o.layer < 0 || o.top_mode < 0) throw ParameterError("coupler override position is negative");
    check_coupler(o.coupler);
  }
}

RealMatrix NoiseParams::visibility_matrix(int n_photons) const {
  if (hom_visibilities.size() == 0) {
    RealMatrix v = RealMatrix::Constant(n_photons, n_photons, hom_visibility);
    v.diagonal().setOnes();
    return v;
  }
  if (hom_visibilities.rows() < n_photons) {
    throw ParameterError("HOM visibility matrix covers " + std::to_string(hom_visibilities.rows()) +
                         " photons, need " + std::to_string(n_photons));
  }
  RealMatrix v = hom_visibilities.topLeftCorner(n_photons, n_photons);
  v.diagonal().setOnes();
  return v;
}

double NoiseParams::detector_efficiency(int mode) const {
  const auto k = static_cast<std::size_t>(mode);
  return k < detector_eff.size() ? detector_eff[k] : 1.0;
}

mesh::MeshLayout apply_couplers(const mesh::MeshLayout& layout, const NoiseParams& np) {
  mesh::MeshLayout out = layout;
  for (auto& cell : out.cells) {
    const auto it = std::find_if(np.coupler_overrides.begin(), np.coupler_overrides.end(),
                                 [&](const CouplerOverride& o) {
                                   return o.layer == cell.layer && o.top_mode == cell.rbs.top_mode;
                                 });
    if (it != np.coupler_overrides.end()) {
      cell.coupler = it->coupler;
    } else if (np.coupler_default) {
      cell.coupler = *np.coupler_default;
    }
  }
  return out;
}

std::optional<std::uint64_t> click_pattern_to_basis_index(ClickMask mask,
                                                          const stategen::DualRailSpec& spec) {
  std::uint64_t index = 0;
  for (int l = 0; l < spec.n_qubits; ++l) {
    const bool top = (mask >> (2 * l)) & 1U;
    const bool bottom = (mask >> (2 * l + 1)) & 1U;
    if (top == bottom) return std::nullopt;
    index = (index << 1) | (bottom ? 1U : 0U);
  }
  if ((mask >> (2 * spec.n_qubits)) != 0) return std::nullopt;
  return index;
}

ClickMask basis_index_to_click_pattern(std::uint64_t index, const stategen::DualRailSpec& spec) {
  ClickMask mask = 0;
  for (int l = 0; l < spec.n_qubits; ++l) {
    const auto bit = (index >> (spec.n_qubits - 1 - l)) & 1U;
    mask |= ClickMask{1} << (2 * l + static_cast<int>(bit));
  }
  return mask;
}

double OutcomeDistribution::valid_mass() const {
  double total = 0.0;
  for (const auto& [mask, p] : patterns) total += p;
  return total;
}

std::vector<double> OutcomeDistribution::basis_probabilities(const stategen::DualRailSpec& spec) const {
  std::vector<double> out(spec.dimension(), 0.0);
  for (const auto& [mask, p] : patterns) {
    if (const auto idx = click_pattern_to_basis_index(mask, spec)) out[*idx] += p;
  }
  return out;
}

std::vector<double> OutcomeDistribution::normalized_basis_probabilities(
    const stategen::DualRailSpec& spec) const {
  auto out = basis_probabilities(spec);
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  if (!(total > 0.0)) throw ModelError("no valid dual-rail pattern has weight");
  for (double& p : out) p /= total;
  return out;
}

namespace {

// Adds the valid click patterns reachable from output configuration t, each
// weighted by the detection probabilities of the clicked and silent modes.
void accumulate_clicks(const fock::FockConfig& t, double weight, const NoiseParams& np,
                       const stategen::DualRailSpec& spec, std::map<ClickMask, double>& patterns) {
  std::vector<int> occupied;
  for (int j = 0; j < t.modes(); ++j) {
    if (t[j] > 0) occupied.push_back(j);
  }
  const auto k = occupied.size();
  for (std::uint32_t sub = 0; sub < (1U << k); ++sub) {
    ClickMask mask = 0;
    double p = weight;
    for (std::size_t a = 0; a < k && p > 0.0; ++a) {
      const int j = occupied[a];
      const double miss = std::pow(1.0 - np.detector_efficiency(j), t[j]);
      if ((sub >> a) & 1U) {
        mask |= ClickMask{1} << j;
        p *= 1.0 - miss;
      } else {
        p *= miss;
      }
    }
    if (p > 0.0 && click_pattern_to_basis_index(mask, spec)) patterns[mask] += p;
  }
}

// Output configurations of k photons that can end in a valid pattern with
// perfect detectors: the pattern itself (k = n), or the pattern with one
// clicked mode holding two photons (k = n + 1).
std::vector<fock::FockConfig> candidate_outputs(int k, const stategen::DualRailSpec& spec) {
  std::vector<fock::FockConfig> out;
  for (std::uint64_t idx = 0; idx < spec.dimension(); ++idx) {
    const auto base = stategen::basis_to_fock(idx, spec);
    if (k == spec.n_qubits) {
      out.push_back(base);
    } else if (k == spec.n_qubits + 1) {
      for (int j = 0; j < base.modes(); ++j) {
        if (base[j] == 0) continue;
        auto occ = base.occupations();
        ++occ[static_cast<std::size_t>(j)];
        out.emplace_back(std::move(occ));
      }
    }
  }
  return out;
}

}  // namespace

OutcomeDistribution noisy_event_distribution(const mesh::MeshLayout& layout,
                                             const stategen::DualRailSpec& spec,
                                             const NoiseParams& np) {
  spec.validate();
  np.validate();
  const int n = spec.n_qubits;
  if (n > kMaxModelQubits) {
    throw SizeError("the noise model supports at most " + std::to_string(kMaxModelQubits) + " qubits");
  }
  if (layout.modes != spec.modes) throw ShapeError("layout and dual-rail spec disagree on modes");
  const ComplexMatrix u = mesh::compose_mesh(apply_couplers(layout, np));

  const auto emission = multiphoton_mixture(np.g2, np.p0);
  const auto overlaps = overlaps_from_visibilities(np.visibility_matrix(n), np.g2);

  bool perfect_detectors = true;
  for (int j = 0; j < spec.modes; ++j) perfect_detectors &= np.detector_efficiency(j) == 1.0;

  struct Event {
    fock::AssignmentList modes;
    GramMatrix gram;
    double weight;
  };
  std::vector<Event> events;
  fock::AssignmentList nominal;
  for (int l = 0; l < n; ++l) nominal.push_back(2 * l);
  events.push_back({nominal, overlaps.gram, std::pow(emission.p1, n)});
  if (emission.p2 > 0.0) {
    const auto extended = overlaps.gram.with_distinguishable_photon();
    for (int l = 0; l < n; ++l) {
      auto modes = nominal;
      modes.push_back(2 * l);
      events.push_back({modes, extended, std::pow(emission.p1, n - 1) * emission.p2});
    }
  }

  OutcomeDistribution out;
  out.modes = spec.modes;
  double modeled = 0.0;
  for (const auto& ev : events) {
    modeled += ev.weight;
    const int total = static_cast<int>(ev.modes.size());
    for (std::uint32_t keep = 0; keep < (1U << total); ++keep) {
      const int k = std::popcount(keep);
      if (k < n) continue;
      const double w_loss = std::pow(np.eta, k) * std::pow(1.0 - np.eta, total - k);
      if (w_loss == 0.0) continue;
      std::vector<int> photons;
      fock::AssignmentList modes;
      for (int a = 0; a < total; ++a) {
        if ((keep >> a) & 1U) {
          photons.push_back(a);
          modes.push_back(ev.modes[static_cast<std::size_t>(a)]);
        }
      }
      const PartialDistKernel kernel(modes, ev.gram.restricted(photons));
      const auto outputs = perfect_detectors ? candidate_outputs(k, spec)
                                             : fock::enumerate_configurations(k, spec.modes);
      for (const auto& t : outputs) {
        const double p = kernel.probability(u, t);
        if (p > 0.0) accumulate_clicks(t, ev.weight * w_loss * p, np, spec, out.patterns);
      }
    }
  }

  // Emission configurations outside the model that still carry >= n photons.
  double at_least_n = 0.0;
  const std::array<double, 3> pk{emission.p0, emission.p1, emission.p2};
  std::uint64_t configs = 1;
  for (int l = 0; l < n; ++l) configs *= 3;
  for (std::uint64_t c = 0; c < configs; ++c) {
    std::uint64_t rest = c;
    int photons = 0;
    double w = 1.0;
    for (int l = 0; l < n; ++l) {
      const auto e = static_cast<std::size_t>(rest % 3);
      rest /= 3;
      photons += static_cast<int>(e);
      w *= pk[e];
    }
    if (photons >= n) at_least_n += w;
  }
  out.truncated = std::max(0.0, at_least_n - modeled);
  out.truncation_warning = out.truncated > kTruncationWarningLevel;
  out.discarded = std::max(0.0, 1.0 - out.valid_mass() - out.truncated);
  return out;
}

std::map<ClickMask, double> apply_detector_correction(const std::map<ClickMask, double>& counts,
                                                      std::span<const double> efficiencies) {
  std::map<ClickMask, double> out;
  for (const auto& [mask, c] : counts) {
    double eff = 1.0;
    for (int j = 0; j < 32; ++j) {
      if (!((mask >> j) & 1U)) continue;
      const double e = static_cast<std::size_t>(j) < efficiencies.size()
                           ? efficiencies[static_cast<std::size_t>(j)]
                           : 1.0;
      if (!(e > 0.0 && e <= 1.0)) throw ParameterError("detector efficiency must lie in (0,1]");
      eff *= e;
    }
    out[mask] = c / eff;
  }
  return out;
}

ModelPrediction predicted_density_matrix(const mesh::MeshLayout& layout,
                                         const stategen::DualRailSpec& spec,
                                         const NoiseParams& np) {
  const int n = spec.n_qubits;
  const auto dim = static_cast<Eigen::Index>(spec.dimension());
  std::uint64_t n_strings = 1;
  for (int l = 0; l < n; ++l) n_strings *= 4;
  std::vector<double> sum(n_strings, 0.0);
  std::vector<int> hits(n_strings, 0);

  auto string_of = [n](std::uint64_t code) {
    tomo::PauliString s(static_cast<std::size_t>(n));
    for (int l = n - 1; l >= 0; --l) {
      s[static_cast<std::size_t>(l)] = static_cast<tomo::Pauli>(code % 4);
      code /= 4;
    }
    return s;
  };
  auto pauli_of = [](mesh::Basis b) {
    switch (b) {
      case mesh::Basis::X: return tomo::Pauli::X;
      case mesh::Basis::Y: return tomo::Pauli::Y;
      case mesh::Basis::Z: break;
    }
    return tomo::Pauli::Z;
  };

  ModelPrediction out{DensityMatrix::maximally_mixed(n)};
  std::vector<double> eff(static_cast<std::size_t>(spec.modes));
  for (int j = 0; j < spec.modes; ++j) eff[static_cast<std::size_t>(j)] = np.detector_efficiency(j);

  for (const auto& setting : tomo::all_settings(n)) {
    const auto programmed = mesh::program_measurement(layout, setting);
    auto dist = noisy_event_distribution(programmed, spec, np);
    out.truncated = std::max(out.truncated, dist.truncated);
    out.truncation_warning = out.truncation_warning || dist.truncation_warning;
    dist.patterns = apply_detector_correction(dist.patterns, eff);
    const auto probs = dist.normalized_basis_probabilities(spec);
    // Every string obtained by replacing a subset of the setting's letters by I.
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      tomo::PauliString s(static_cast<std::size_t>(n), tomo::Pauli::I);
      std::uint64_t code = 0;
      for (int l = 0; l < n; ++l) {
        if ((mask >> (n - 1 - l)) & 1U) s[static_cast<std::size_t>(l)] = pauli_of(setting[static_cast<std::size_t>(l)]);
        code = code * 4 + static_cast<std::uint64_t>(s[static_cast<std::size_t>(l)]);
      }
      double e = 0.0;
      for (std::uint64_t b = 0; b < probs.size(); ++b) e += tomo::outcome_sign(s, b) * probs[b];
      sum[code] += e;
      ++hits[code];
    }
  }

  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (std::uint64_t code = 0; code < n_strings; ++code) {
    rho += (sum[code] / hits[code]) * tomo::pauli_matrix(string_of(code));
  }
  rho /= static_cast<double>(dim);
  out.min_eigenvalue = min_eigenvalue(rho);
  if (out.min_eigenvalue < -kModelInconsistencyTolerance) {
    throw ModelError("model setting distributions are inconsistent: eigenvalue " +
                     std::to_string(out.min_eigenvalue));
  }
  out.rho = DensityMatrix::project_psd(rho);
  return out;
}

}  // namespace tqst::noise

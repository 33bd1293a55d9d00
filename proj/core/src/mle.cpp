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
#include <limits>
#include <random>
#include <string>

#include <ceres/ceres.h>

#include "tqst/tomo.hpp"

namespace tqst::tomo {

namespace {

constexpr double kFunctionTolerance = 1e-9;
constexpr double kGradientTolerance = 1e-8;
// Underdetermined plans leave flat valleys that L-BFGS crosses slowly. A run
// that hit the iteration cap while improving by less than this (relative)
// over the final tenth of its iterations is accepted as converged.
constexpr double kStallTolerance = 1e-6;

bool stalled(const ceres::GradientProblemSolver::Summary& summary) {
  if (summary.termination_type != ceres::NO_CONVERGENCE) return false;
  const auto& it = summary.iterations;
  if (it.size() < 100) return false;
  const std::size_t window = it.size() / 10;
  const double before = it[it.size() - 1 - window].cost;
  const double after = it.back().cost;
  return before - after <= kStallTolerance * std::max(after, 1e-300);
}

// Lower-triangular T with real diagonal, packed row by row: a diagonal entry
// takes one parameter, an off-diagonal entry two (real, imaginary).
class Cholesky {
 public:
  explicit Cholesky(Eigen::Index dim) : dim_(dim) {}
  int parameters() const { return static_cast<int>(dim_ * dim_); }

  void unpack(const double* x, ComplexMatrix& t) const {
    t.setZero();
    int k = 0;
    for (Eigen::Index r = 0; r < dim_; ++r) {
      for (Eigen::Index c = 0; c < r; ++c, k += 2) t(r, c) = Complex{x[k], x[k + 1]};
      t(r, r) = x[k++];
    }
  }

  void pack(const ComplexMatrix& g, double* out) const {
    int k = 0;
    for (Eigen::Index r = 0; r < dim_; ++r) {
      for (Eigen::Index c = 0; c < r; ++c, k += 2) {
        out[k] = g(r, c).real();
        out[k + 1] = g(r, c).imag();
      }
      out[k++] = g(r, r).real();
    }
  }

 private:
  Eigen::Index dim_;
};

// Projector state with at most two nonzero amplitudes.
struct SparseState {
  Eigen::Index a = 0;
  Eigen::Index b = -1;
  Complex ca{1.0, 0.0};
  Complex cb{0.0, 0.0};
};

SparseState sparse_state(const Projector& p) {
  const double h = 1.0 / std::sqrt(2.0);
  SparseState s;
  s.a = static_cast<Eigen::Index>(p.i);
  switch (p.kind) {
    case ProjectorKind::diagonal: break;
    case ProjectorKind::real_part:
      s.ca = h;
      s.b = static_cast<Eigen::Index>(p.j);
      s.cb = h;
      break;
    case ProjectorKind::imag_part:
      s.ca = h;
      s.b = static_cast<Eigen::Index>(p.j);
      s.cb = Complex{0.0, h};
      break;
  }
  return s;
}

class Likelihood final : public ceres::FirstOrderFunction {
 public:
  Likelihood(Eigen::Index dim, std::vector<SparseState> states, std::vector<double> f, double eps)
      : chol_(dim), states_(std::move(states)), f_(std::move(f)), eps_(eps), t_(dim, dim),
        w_(dim), g_(dim, dim) {}

  int NumParameters() const override { return chol_.parameters(); }

  bool Evaluate(const double* x, double* cost, double* gradient) const override {
    chol_.unpack(x, t_);
    const double tau = t_.squaredNorm();
    if (!(tau > 0.0) || !std::isfinite(tau)) return false;
    double total = 0.0;
    double trace_coeff = 0.0;
    if (gradient) g_.setZero();
    for (std::size_t nu = 0; nu < states_.size(); ++nu) {
      const auto& s = states_[nu];
      w_.noalias() = t_.col(s.a) * s.ca;
      if (s.b >= 0) w_.noalias() += t_.col(s.b) * s.cb;
      const double q = w_.squaredNorm();
      const double p = q / tau;
      const double f = f_[nu];
      double dl;
      if (p > eps_) {
        total += (p - f) * (p - f) / (2.0 * p);
        dl = (p * p - f * f) / (2.0 * p * p);
      } else {
        total += (p - f) * (p - f) / (2.0 * eps_);
        dl = (p - f) / eps_;
      }
      if (gradient) {
        // dp/dT = (2/tau) (T psi) psi^dag - (2 q / tau^2) T; real and imaginary
        // parts give the derivatives along each entry's two parameters.
        const double c = 2.0 * dl / tau;
        g_.col(s.a).noalias() += (c * std::conj(s.ca)) * w_;
        if (s.b >= 0) g_.col(s.b).noalias() += (c * std::conj(s.cb)) * w_;
        trace_coeff += dl * q / (tau * tau);
      }
    }
    *cost = total;
    if (gradient) {
      g_ -= (2.0 * trace_coeff) * t_;
      chol_.pack(g_, gradient);
    }
    return true;
  }

  ComplexMatrix rho(const double* x) const {
    ComplexMatrix t(t_.rows(), t_.cols());
    chol_.unpack(x, t);
    ComplexMatrix r = t.adjoint() * t;
    return r / r.trace().real();
  }

 private:
  Cholesky chol_;
  std::vector<SparseState> states_;
  std::vector<double> f_;
  double eps_;
  mutable ComplexMatrix t_;
  mutable ComplexVector w_;
  mutable ComplexMatrix g_;
};

}  // namespace

MleResult mle_reconstruct(const ProjectorPlan& plan, std::span<const double> frequencies,
                          const MleOptions& options) {
  if (plan.projectors.empty()) throw ContractError("mle_reconstruct: empty plan");
  if (frequencies.size() != plan.projectors.size()) {
    throw ShapeError("mle_reconstruct: " + std::to_string(frequencies.size()) + " frequencies for " +
                     std::to_string(plan.projectors.size()) + " projectors");
  }
  for (double f : frequencies) {
    if (!(f >= 0.0 && f <= 1.0)) throw ContractError("mle_reconstruct: frequency outside [0,1]");
  }
  if (options.starts < 1) throw ContractError("mle_reconstruct: need at least one start");

  const Eigen::Index dim = Eigen::Index{1} << plan.n_qubits;
  std::vector<SparseState> states;
  states.reserve(plan.projectors.size());
  for (const auto& p : plan.projectors) states.push_back(sparse_state(p));
  auto* fn = new Likelihood(dim, states, {frequencies.begin(), frequencies.end()}, options.epsilon);
  const ceres::GradientProblem problem(fn);  // owns fn
  const int np = fn->NumParameters();

  ceres::GradientProblemSolver::Options solver;
  solver.line_search_direction_type = ceres::BFGS;
  solver.max_num_iterations = options.max_iterations;
  solver.function_tolerance = kFunctionTolerance;
  solver.gradient_tolerance = kGradientTolerance;
  solver.parameter_tolerance = 1e-14;
  solver.logging_type = ceres::SILENT;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  MleDiagnostics diag;
  std::vector<double> best_x;
  bool best_converged = false;
  double best_obj = std::numeric_limits<double>::infinity();
  for (int k = 0; k < options.starts; ++k) {
    std::vector<double> x(static_cast<std::size_t>(np), 0.0);
    if (k == 0) {
      const Cholesky chol(dim);
      chol.pack(ComplexMatrix::Identity(dim, dim), x.data());
    } else {
      for (double& v : x) v = normal(rng);
    }
    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(solver, problem, x.data(), &summary);
    diag.iterations += static_cast<int>(summary.iterations.size());
    const bool converged = summary.termination_type == ceres::CONVERGENCE || stalled(summary);
    const double obj = summary.final_cost;
    diag.start_objectives.push_back(obj);
    if (converged) ++diag.converged_starts;
    if (!summary.IsSolutionUsable() || !std::isfinite(obj)) continue;
    // A later start must improve by more than round-off to displace an earlier one.
    const bool better = best_x.empty() || (converged && !best_converged) ||
                        (converged == best_converged &&
                         obj < best_obj - std::max(1e-12, 1e-6 * best_obj));
    if (better) {
      best_x = x;
      best_obj = obj;
      best_converged = converged;
      diag.best_start = k;
      diag.termination = summary.message;
    }
  }
  if (best_x.empty()) {
    throw ReconstructionError("mle_reconstruct: no usable optimizer run",
                              MleResult{DensityMatrix::maximally_mixed(plan.n_qubits), diag});
  }
  diag.objective = best_obj;
  MleResult result{DensityMatrix::project_psd(fn->rho(best_x.data())), diag};
  if (!best_converged) {
    std::string detail;
    for (double o : diag.start_objectives) detail += " " + std::to_string(o);
    throw ReconstructionError("mle_reconstruct: no start converged (" + std::to_string(plan.projector_count()) +
                                  " projectors; start objectives" + detail + "; " + diag.termination + ")",
                              std::move(result));
  }
  return result;
}

}  // namespace tqst::tomo

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

// Slow, direct reference implementations used to check the fast library paths.
// Nothing here calls into tqst_core beyond the shared scalar typedefs.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Sum over all n! permutations of prod_i a(i, sigma(i)).
inline C permanent(const CMat& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  C sum = 0.0;
  do {
    C prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= a(i, sigma[static_cast<std::size_t>(i)]);
    sum += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return sum;
}

inline CMat random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = C(g(rng), g(rng));
  return m;
}

// Haar-ish unitary from the QR of a Gaussian matrix.
inline CMat random_unitary(int m, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMat> qr(random_complex(m, m, rng));
  CMat q = qr.householderQ();
  return q;
}

// Mode index of each photon, in ascending mode order.
inline std::vector<int> photon_modes(const std::vector<int>& occupation) {
  std::vector<int> out;
  for (std::size_t k = 0; k < occupation.size(); ++k)
    for (int c = 0; c < occupation[k]; ++c) out.push_back(static_cast<int>(k));
  return out;
}

// |per(U[out, in])|^2 / (prod s! prod t!), rows indexed by output photons.
inline double born_probability(const CMat& u, const std::vector<int>& in, const std::vector<int>& out) {
  const auto a = photon_modes(in);
  const auto b = photon_modes(out);
  if (a.size() != b.size()) return 0.0;
  const int n = static_cast<int>(a.size());
  CMat sub(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) sub(r, c) = u(b[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(c)]);
  double norm = 1.0;
  for (int s : in) norm *= factorial(s);
  for (int t : out) norm *= factorial(t);
  return std::norm(permanent(sub)) / norm;
}

// Partially distinguishable photons in distinct input modes `in_modes`, with
// real overlap matrix s. Double sum over (sigma, rho):
//   P = 1/prod t! sum_{sigma,rho} prod_j M[j,sigma j] conj(M[j,rho j]) s[rho j, sigma j]
// where M[j,k] = U(out photon j, in photon k).
inline double gram_probability(const CMat& u, const std::vector<int>& in_modes, const RMat& s,
                               const std::vector<int>& out) {
  const auto b = photon_modes(out);
  const int n = static_cast<int>(in_modes.size());
  if (static_cast<int>(b.size()) != n) return 0.0;
  CMat m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = u(b[static_cast<std::size_t>(j)], in_modes[static_cast<std::size_t>(k)]);
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  C total = 0.0;
  do {
    std::vector<int> rho(static_cast<std::size_t>(n));
    std::iota(rho.begin(), rho.end(), 0);
    do {
      C prod = 1.0;
      for (int j = 0; j < n; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        prod *= m(j, sigma[sj]) * std::conj(m(j, rho[sj])) * s(rho[sj], sigma[sj]);
      }
      total += prod;
    } while (std::next_permutation(rho.begin(), rho.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  double norm = 1.0;
  for (int t : out) norm *= factorial(t);
  return total.real() / norm;
}

// Every occupation vector of n photons in m modes, by recursion.
inline std::vector<std::vector<int>> all_occupations(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int mode, int left) {
    if (mode == m - 1) {
      cur[static_cast<std::size_t>(mode)] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[static_cast<std::size_t>(mode)] = k;
      rec(mode + 1, left - k);
    }
  };
  rec(0, n);
  return out;
}

// Smaller root of g2 (q + x)^2 = 2 x, q = 1 - p0, by the quadratic formula.
inline double multiphoton_p2_closed(double g2, double p0) {
  const double q = 1.0 - p0;
  if (g2 == 0.0) return 0.0;
  const double a = g2, b = 2.0 * g2 * q - 2.0, c = g2 * q * q;
  const double disc = b * b - 4.0 * a * c;
  // Stable form of (-b - sqrt(disc)) / 2a.
  return 2.0 * c / (-b + std::sqrt(disc));
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Single-qubit Pauli by letter 0..3 = I, X, Y, Z.
inline CMat pauli(int k) {
  CMat p(2, 2);
  const C i(0.0, 1.0);
  switch (k) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -i, i, 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

inline CMat pauli_string(const std::vector<int>& letters) {
  CMat out = CMat::Identity(1, 1);
  for (int k : letters) out = kron(out, pauli(k));
  return out;
}

// Coefficient of every Pauli string in m: c_P = tr(P m) / 2^n, strings in base-4 order.
inline std::vector<C> pauli_coefficients(const CMat& m, int n) {
  const int count = 1 << (2 * n);
  std::vector<C> out;
  for (int code = 0; code < count; ++code) {
    std::vector<int> letters(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) letters[static_cast<std::size_t>(q)] = (code >> (2 * (n - 1 - q))) & 3;
    out.push_back((pauli_string(letters) * m).trace() / static_cast<double>(1 << n));
  }
  return out;
}

// Gini coefficient as the normalized mean absolute difference.
inline double gini_mad(const std::vector<double>& c) {
  double sum = 0.0, diff = 0.0;
  for (double a : c) {
    sum += a;
    for (double b : c) diff += std::abs(a - b);
  }
  return diff / (2.0 * static_cast<double>(c.size()) * sum);
}

inline CMat outer(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return a * b.adjoint(); }

// Uhlmann fidelity of rho = a a^dagger and sigma = b b^dagger from the factors:
// F = ||a^dagger b||_1^2, with no matrix square root involved.
inline double fidelity_from_factors(const CMat& a, const CMat& b) {
  const double tn = Eigen::JacobiSVD<CMat>(a.adjoint() * b).singularValues().sum();
  return tn * tn;
}

// Born-rule outcome distribution of rho measured in the basis whose rows are
// the measured bras (i.e. p_k = <k| V rho V^dagger |k>).
inline std::vector<double> born_rule(const CMat& rho, const CMat& v) {
  const CMat r = v * rho * v.adjoint();
  std::vector<double> out;
  for (Eigen::Index k = 0; k < r.rows(); ++k) out.push_back(r(k, k).real());
  return out;
}

}  // namespace oracle

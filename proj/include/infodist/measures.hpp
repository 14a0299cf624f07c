// Copyright 2026 The infodist Authors
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

// Distinguishability of two hypotheses: classical measures of a pair of
// outcome distributions and their quantum-optimized counterparts. All
// entropies and informations are in bits.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infodist/error.hpp"
#include "infodist/linalg.hpp"
#include "infodist/quantum.hpp"

namespace infodist {

class PriorPair {
 public:
  PriorPair() = default;
  PriorPair(double pi0, double pi1) : pi0_(pi0), pi1_(pi1) {
    if (!(pi0 >= 0.0 && pi1 >= 0.0 && std::abs(pi0 + pi1 - 1.0) < 1e-12)) {
      throw InvariantError("PriorPair: (" + std::to_string(pi0) + ", " + std::to_string(pi1) +
                           ") is not a probability pair");
    }
  }
  static PriorPair equal() { return {}; }

  double pi0() const { return pi0_; }
  double pi1() const { return pi1_; }
  double operator[](int s) const { return s == 0 ? pi0_ : pi1_; }

 private:
  double pi0_ = 0.5;
  double pi1_ = 0.5;
};

using Distribution = std::span<const double>;

namespace detail {

inline void require_distribution_pair(Distribution p0, Distribution p1, const char* where) {
  if (p0.size() != p1.size()) {
    throw DimensionError(std::string(where) + ": distributions have lengths " +
                         std::to_string(p0.size()) + " and " + std::to_string(p1.size()));
  }
  for (const auto* p : {&p0, &p1}) {
    double total = 0.0;
    for (double x : *p) {
      if (x < 0.0) throw InvariantError(std::string(where) + ": negative probability");
      total += x;
    }
    if (!(std::abs(total - 1.0) < 1e-10)) {
      throw InvariantError(std::string(where) + ": distribution sums to " + std::to_string(total));
    }
  }
}

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace detail

inline double shannon_entropy(Distribution p) {
  double h = 0.0;
  for (double x : p) h -= detail::xlog2x(x);
  return h;
}

inline double binary_entropy(double p) {
  const double q[2] = {p, 1.0 - p};
  return shannon_entropy(q);
}

/// Bhattacharyya overlap sum_b sqrt(p0(b) p1(b)).
inline double overlap_classical(Distribution p0, Distribution p1) {
  detail::require_distribution_pair(p0, p1, "overlap_classical");
  double s = 0.0;
  for (std::size_t b = 0; b < p0.size(); ++b) s += std::sqrt(p0[b] * p1[b]);
  return s;
}

inline double mutual_information(const PriorPair& priors, Distribution p0, Distribution p1) {
  detail::require_distribution_pair(p0, p1, "mutual_information");
  std::vector<double> mix(p0.size());
  for (std::size_t b = 0; b < p0.size(); ++b) mix[b] = priors.pi0() * p0[b] + priors.pi1() * p1[b];
  const double info = shannon_entropy(mix) - priors.pi0() * shannon_entropy(p0) -
                      priors.pi1() * shannon_entropy(p1);
  return std::max(info, 0.0);
}

/// Error of the Bayes decision rule, sum_b min(pi0 p0(b), pi1 p1(b)).
inline double error_prob_classical(const PriorPair& priors, Distribution p0, Distribution p1) {
  detail::require_distribution_pair(p0, p1, "error_prob_classical");
  double s = 0.0;
  for (std::size_t b = 0; b < p0.size(); ++b)
    s += std::min(priors.pi0() * p0[b], priors.pi1() * p1[b]);
  return s;
}

/// Bayes posterior (p(0|b), p(1|b)).
inline std::pair<double, double> posterior(const PriorPair& priors, Distribution p0,
                                           Distribution p1, std::size_t outcome) {
  detail::require_distribution_pair(p0, p1, "posterior");
  if (outcome >= p0.size()) throw DimensionError("posterior: outcome index out of range");
  const double j0 = priors.pi0() * p0[outcome];
  const double j1 = priors.pi1() * p1[outcome];
  const double pb = j0 + j1;
  if (!(pb > 0.0)) throw DomainError("posterior: outcome " + std::to_string(outcome) + " is impossible");
  return {j0 / pb, j1 / pb};
}

/// Kolmogorov variational distance, 1/2 sum_b |pi1 p1(b) - pi0 p0(b)|.
inline double kolmogorov_distance(const PriorPair& priors, Distribution p0, Distribution p1) {
  detail::require_distribution_pair(p0, p1, "kolmogorov_distance");
  double s = 0.0;
  for (std::size_t b = 0; b < p0.size(); ++b)
    s += std::abs(priors.pi1() * p1[b] - priors.pi0() * p0[b]);
  return 0.5 * s;
}

namespace detail {

inline void require_same_dim(const DensityOperator& a, const DensityOperator& b, const char* where) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(where) + ": state dims " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()));
  }
}

inline constexpr double kSupportCutoff = 1e-14;

inline std::size_t support_rank(const EigenDecomposition& e) {
  return static_cast<std::size_t>(
      std::count_if(e.values.begin(), e.values.end(), [](double x) { return x > kSupportCutoff; }));
}

// tr sqrt(sqrt(s) t sqrt(s)), evaluated on the support of s. Restricting to the
// support keeps rank-one cases exact instead of taking square roots of
// eigensolver noise.
inline double sandwich_overlap(const EigenDecomposition& s, const CMatrix& t) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < s.values.size(); ++i)
    if (s.values[i] > kSupportCutoff) support.push_back(i);
  const std::size_t k = support.size();
  if (k == 0) return 0.0;
  std::vector<CVector> cols;
  for (auto i : support) cols.push_back(s.vectors.column(i));
  CMatrix m(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    const CVector tv = t * std::span<const cplx>(cols[a]);
    for (std::size_t b = 0; b < k; ++b) {
      m(b, a) = std::sqrt(s.values[support[a]] * s.values[support[b]]) * inner(cols[b], tv);
    }
  }
  if (k == 1) return std::sqrt(std::max(m(0, 0).real(), 0.0));
  double sum = 0.0;
  for (double mu : herm_eig(hermitian_part(m)).values)
    if (mu > 0.0) sum += std::sqrt(mu);
  return sum;
}

}  // namespace detail

/// Minimal statistical overlap over all measurements, tr sqrt(rho1^1/2 rho0 rho1^1/2).
/// Symmetric in its arguments; the lower-rank state is used as the sandwich.
inline double min_overlap(const DensityOperator& rho0, const DensityOperator& rho1) {
  detail::require_same_dim(rho0, rho1, "min_overlap");
  const auto e0 = herm_eig(rho0.matrix());
  const auto e1 = herm_eig(rho1.matrix());
  const double b = detail::support_rank(e0) < detail::support_rank(e1)
                       ? detail::sandwich_overlap(e0, rho1.matrix())
                       : detail::sandwich_overlap(e1, rho0.matrix());
  return std::min(b, 1.0 + 1e-12);
}

/// Fidelity F = (min_overlap)^2.
inline double fidelity(const DensityOperator& rho0, const DensityOperator& rho1) {
  const double b = min_overlap(rho0, rho1);
  return std::min(b * b, 1.0);
}

/// 1/2 tr|rho0 - rho1|
inline double trace_distance(const DensityOperator& rho0, const DensityOperator& rho1) {
  detail::require_same_dim(rho0, rho1, "trace_distance");
  return 0.5 * trace_norm(rho0.matrix() - rho1.matrix());
}

struct HelstromResult {
  double error_probability;
  CMatrix gamma;  // pi1 rho1 - pi0 rho0
  Povm optimal_povm;  // {guess 0, guess 1}
};

/// 1/2 - 1/2 tr|pi1 rho1 - pi0 rho0| without building the measurement.
inline double helstrom_error(const PriorPair& priors, const DensityOperator& rho0,
                             const DensityOperator& rho1) {
  detail::require_same_dim(rho0, rho1, "helstrom_error");
  const double tn = trace_norm(priors.pi1() * rho1.matrix() - priors.pi0() * rho0.matrix());
  return std::clamp(0.5 - 0.5 * tn, 0.0, 0.5);
}

/// Minimum error probability for discriminating rho0 from rho1 and the
/// projective measurement achieving it (projectors onto the negative and the
/// nonnegative eigenspaces of Gamma). Eigenvalues with magnitude below 1e-12
/// go to the "guess 1" projector; the choice does not affect the error.
inline HelstromResult helstrom(const PriorPair& priors, const DensityOperator& rho0,
                               const DensityOperator& rho1) {
  detail::require_same_dim(rho0, rho1, "helstrom");
  CMatrix gamma = priors.pi1() * rho1.matrix() - priors.pi0() * rho0.matrix();
  const auto eig = herm_eig(gamma);
  const std::size_t d = rho0.dim();
  CMatrix guess0(d, d);
  CMatrix guess1(d, d);
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    abs_sum += std::abs(eig.values[i]);
    const CMatrix p = CMatrix::projector(eig.vectors.column(i));
    if (eig.values[i] <= -1e-12) {
      guess0 += p;
    } else {
      guess1 += p;
    }
  }
  const double err = std::clamp(0.5 - 0.5 * abs_sum, 0.0, 0.5);
  return {err, std::move(gamma), Povm({std::move(guess0), std::move(guess1)})};
}

/// Von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityOperator& rho) {
  double s = 0.0;
  for (double x : eigenvalues(rho.matrix())) s -= detail::xlog2x(x);
  return std::max(s, 0.0);
}

/// Holevo quantity S(pi0 rho0 + pi1 rho1) - pi0 S(rho0) - pi1 S(rho1).
inline double holevo_bound(const PriorPair& priors, const DensityOperator& rho0,
                           const DensityOperator& rho1) {
  detail::require_same_dim(rho0, rho1, "holevo_bound");
  const DensityOperator mix(priors.pi0() * rho0.matrix() + priors.pi1() * rho1.matrix());
  const double chi = von_neumann_entropy(mix) - priors.pi0() * von_neumann_entropy(rho0) -
                     priors.pi1() * von_neumann_entropy(rho1);
  return std::max(chi, 0.0);
}

/// The Hermitian operator rho1^-1/2 sqrt(rho1^1/2 rho0 rho1^1/2) rho1^-1/2 whose
/// eigenbasis measurement attains min_overlap. Both states must be invertible.
inline CMatrix overlap_optimal_measurement(const DensityOperator& rho0,
                                           const DensityOperator& rho1) {
  detail::require_same_dim(rho0, rho1, "overlap_optimal_measurement");
  for (const auto* r : {&rho0, &rho1}) {
    const double lo = eigenvalues(r->matrix()).front();
    if (!(lo > 1e-8)) {
      throw DomainError("overlap_optimal_measurement: state is not invertible (min eigenvalue " +
                        std::to_string(lo) + ")");
    }
  }
  const auto e1 = herm_eig(rho1.matrix());
  const CMatrix s1 = e1.apply([](double x) { return std::sqrt(x); });
  const CMatrix s1inv = e1.apply([](double x) { return 1.0 / std::sqrt(x); });
  const CMatrix mid = psd_sqrt(hermitian_part(s1 * rho0.matrix() * s1));
  return hermitian_part(s1inv * mid * s1inv);
}

}  // namespace infodist

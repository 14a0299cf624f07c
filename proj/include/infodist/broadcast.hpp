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

// Broadcasting two states onto A (x) E: the exact construction for commuting
// pairs, numerical searches over channels for noncommuting pairs, and block
// diagonal pairs that yield information without disturbance.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infodist/error.hpp"
#include "infodist/linalg.hpp"
#include "infodist/measures.hpp"
#include "infodist/optimize.hpp"
#include "infodist/quantum.hpp"

namespace infodist {

struct BroadcastAttempt {
  /// R_s on A (x) E, A-major.
  std::array<DensityOperator, 2> joint;
  /// Trace distances {tr_E R_0 vs rho0, tr_A R_0 vs rho0, tr_E R_1 vs rho1, tr_A R_1 vs rho1}.
  std::array<double, 4> marginal_errors{};
  /// 1 - max(marginal_errors).
  double score = 0.0;
  /// False when some restart budget ran out before the simplex collapsed.
  bool converged = true;
};

inline constexpr double kCommutationTolerance = 1e-10;

namespace detail {

inline std::array<double, 4> marginal_errors(const std::array<CMatrix, 2>& joint, const DensityOperator& rho0,
                                             const DensityOperator& rho1) {
  const std::size_t n = rho0.dim();
  std::array<double, 4> err{};
  for (int s = 0; s < 2; ++s) {
    const CMatrix& rho = (s == 0 ? rho0 : rho1).matrix();
    err[2 * s] = 0.5 * trace_norm(partial_trace(joint[s], n, n, Keep::A) - rho);
    err[2 * s + 1] = 0.5 * trace_norm(partial_trace(joint[s], n, n, Keep::E) - rho);
  }
  return err;
}

inline BroadcastAttempt make_attempt(const std::array<CMatrix, 2>& joint, const DensityOperator& rho0,
                                     const DensityOperator& rho1, bool converged) {
  const auto err = marginal_errors(joint, rho0, rho1);
  return {{DensityOperator(hermitian_part(joint[0])), DensityOperator(hermitian_part(joint[1]))},
          err,
          1.0 - *std::max_element(err.begin(), err.end()),
          converged};
}

// Isometry C^n_in -> C^n_out (x) C^env read from 2 * n_in * n_out * env reals
// (re, im interleaved, one column after another). Empty for degenerate input.
inline std::optional<CMatrix> isometry_from_reals(std::span<const double> x, std::size_t n_in,
                                                  std::size_t n_out, std::size_t env) {
  const std::size_t rows = n_out * env;
  CMatrix raw(rows, n_in);
  for (std::size_t j = 0; j < n_in; ++j)
    for (std::size_t k = 0; k < rows; ++k) raw(k, j) = cplx(x[2 * (j * rows + k)], x[2 * (j * rows + k) + 1]);
  return orthonormalize_columns(raw, 1e-8);
}

// tr_env(V rho V^dagger).
inline CMatrix stinespring_apply(const CMatrix& v, const CMatrix& rho, std::size_t n_out, std::size_t env) {
  return partial_trace(v * rho * v.adjoint(), n_out, env, Keep::A);
}

inline void require_pair(const DensityOperator& rho0, const DensityOperator& rho1, const char* where) {
  if (rho0.dim() != rho1.dim()) {
    throw DimensionError(std::string(where) + ": state dims " + std::to_string(rho0.dim()) + " and " +
                         std::to_string(rho1.dim()));
  }
}

}  // namespace detail

/// Exact broadcaster for commuting states: in a common eigenbasis {|b>},
/// R_s = sum_b p_s(b) |b>|b><b|<b|.
inline BroadcastAttempt broadcast_commuting(const DensityOperator& rho0, const DensityOperator& rho1) {
  detail::require_pair(rho0, rho1, "broadcast_commuting");
  const double comm = commutator(rho0.matrix(), rho1.matrix()).max_abs();
  if (!(comm < kCommutationTolerance)) {
    throw DomainError("broadcast_commuting: states do not commute (max |[rho0, rho1]| = " +
                      std::to_string(comm) + ")");
  }
  const std::size_t n = rho0.dim();
  // A generic combination separates the joint eigenspaces; a few fixed mixing
  // ratios cover accidental degeneracies of any single one.
  for (double xi : {0.6180339887498949, 0.4142135623730950, 0.2360679774997897}) {
    const auto eig = herm_eig(rho0.matrix() + xi * rho1.matrix());
    const CMatrix& u = eig.vectors;
    const CMatrix d0 = u.adjoint() * rho0.matrix() * u;
    const CMatrix d1 = u.adjoint() * rho1.matrix() * u;
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off = std::max({off, std::abs(d0(i, j)), std::abs(d1(i, j))});
    if (off >= 1e-9) continue;
    std::array<CMatrix, 2> joint{CMatrix(n * n, n * n), CMatrix(n * n, n * n)};
    for (std::size_t b = 0; b < n; ++b) {
      const CVector ub = u.column(b);
      const CMatrix bb = CMatrix::projector(tensor_product(ub, ub));
      joint[0] += std::max(d0(b, b).real(), 0.0) * bb;
      joint[1] += std::max(d1(b, b).real(), 0.0) * bb;
    }
    return detail::make_attempt(joint, rho0, rho1, true);
  }
  throw InvariantError("broadcast_commuting: no common eigenbasis found for commuting states");
}

/// Best broadcast found over channels rho -> tr_env V (rho (x) |0><0|) V^dagger,
/// with V an isometry into A (x) E (x) env and env of dimension env_dim. Each
/// restart minimizes the squared Frobenius marginal error first, then
/// 1 - score itself.
inline BroadcastAttempt search_broadcaster(const DensityOperator& rho0, const DensityOperator& rho1,
                                           int env_dim, const OptimizerConfig& cfg) {
  detail::require_pair(rho0, rho1, "search_broadcaster");
  if (env_dim < 1) throw DomainError("search_broadcaster: env_dim must be >= 1");
  const std::size_t n = rho0.dim();
  const std::size_t n_out = n * n;
  const auto env = static_cast<std::size_t>(env_dim);
  const std::array<const CMatrix*, 2> rho{&rho0.matrix(), &rho1.matrix()};

  auto outputs = [&](std::span<const double> x) -> std::optional<std::array<CMatrix, 2>> {
    const auto v = detail::isometry_from_reals(x, n, n_out, env);
    if (!v) return std::nullopt;
    return std::array<CMatrix, 2>{detail::stinespring_apply(*v, *rho[0], n_out, env),
                                  detail::stinespring_apply(*v, *rho[1], n_out, env)};
  };
  auto surrogate = [&](std::span<const double> x) {
    const auto out = outputs(x);
    if (!out) return std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (int s = 0; s < 2; ++s) {
      for (Keep keep : {Keep::A, Keep::E}) {
        const CMatrix diff = partial_trace((*out)[s], n, n, keep) - *rho[s];
        for (const cplx& z : diff.entries()) total += std::norm(z);
      }
    }
    return total;
  };
  auto objective = [&](std::span<const double> x) {
    const auto out = outputs(x);
    if (!out) return std::numeric_limits<double>::infinity();
    const auto err = detail::marginal_errors(*out, rho0, rho1);
    return *std::max_element(err.begin(), err.end());
  };
  const Minimum m =
      multistart_minimize(objective, 2 * n * n_out * env, -1.0, 1.0, 0.3, cfg, surrogate);
  const auto out = outputs(m.x);
  if (!out) throw InvariantError("search_broadcaster: optimum is not an isometry");
  return detail::make_attempt(*out, rho0, rho1, m.converged);
}

struct CloneCheckResult {
  /// max over channels of min_s F(E(rho_s (x) |0><0|), rho_s (x) rho_s).
  double score;
  bool converged;
};

/// Best cloning fidelity over channels with an environment of dimension dim^2.
inline CloneCheckResult clone_check(const DensityOperator& rho0, const DensityOperator& rho1,
                                    const OptimizerConfig& cfg) {
  detail::require_pair(rho0, rho1, "clone_check");
  const std::size_t n = rho0.dim();
  const std::size_t n_out = n * n;
  const std::size_t env = n * n;
  const std::array<DensityOperator, 2> target{
      DensityOperator(tensor_product(rho0.matrix(), rho0.matrix())),
      DensityOperator(tensor_product(rho1.matrix(), rho1.matrix()))};
  const std::array<const CMatrix*, 2> rho{&rho0.matrix(), &rho1.matrix()};

  auto fidelities = [&](std::span<const double> x) -> std::optional<std::array<double, 2>> {
    const auto v = detail::isometry_from_reals(x, n, n_out, env);
    if (!v) return std::nullopt;
    std::array<double, 2> f{};
    for (int s = 0; s < 2; ++s) {
      const DensityOperator out(hermitian_part(detail::stinespring_apply(*v, *rho[s], n_out, env)));
      f[s] = fidelity(out, target[s]);
    }
    return f;
  };
  auto surrogate = [&](std::span<const double> x) {
    const auto f = fidelities(x);
    return f ? 2.0 - (*f)[0] - (*f)[1] : std::numeric_limits<double>::infinity();
  };
  auto objective = [&](std::span<const double> x) {
    const auto f = fidelities(x);
    return f ? 1.0 - std::min((*f)[0], (*f)[1]) : std::numeric_limits<double>::infinity();
  };
  const Minimum m = multistart_minimize(objective, 2 * n * n_out * env, -1.0, 1.0, 0.3, cfg, surrogate);
  return {1.0 - m.f, m.converged};
}

/// Invertible noncommuting qubit pair 1/2 |0><0| + I/4 and 1/2 |+><+| + I/4.
inline std::array<DensityOperator, 2> designated_noncommuting_pair() {
  const CMatrix quarter = 0.25 * CMatrix::identity(2);
  const CMatrix zero{{1.0, 0.0}, {0.0, 0.0}};
  const CMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
  return {DensityOperator(0.5 * zero + quarter), DensityOperator(0.5 * plus + quarter)};
}

/// Two states assembled block-diagonally: rho_s = (+)_b weights_s[b] block_states_s[b].
class BlockStatePair {
 public:
  BlockStatePair(std::vector<double> weights0, std::vector<double> weights1,
                 std::vector<DensityOperator> block_states0, std::vector<DensityOperator> block_states1)
      : weights_{std::move(weights0), std::move(weights1)},
        blocks_{std::move(block_states0), std::move(block_states1)} {
    const std::size_t nb = weights_[0].size();
    if (nb == 0 || weights_[1].size() != nb || blocks_[0].size() != nb || blocks_[1].size() != nb) {
      throw DimensionError("BlockStatePair: weights and block states must list the same blocks");
    }
    for (int s = 0; s < 2; ++s) {
      double total = 0.0;
      for (double w : weights_[s]) {
        if (!(w >= 0.0)) throw InvariantError("BlockStatePair: negative block weight");
        total += w;
      }
      if (!(std::abs(total - 1.0) < 1e-12)) {
        throw InvariantError("BlockStatePair: weights" + std::to_string(s) + " sum to " + std::to_string(total));
      }
    }
    for (std::size_t b = 0; b < nb; ++b) {
      if (blocks_[0][b].dim() != blocks_[1][b].dim()) {
        throw DimensionError("BlockStatePair: block " + std::to_string(b) + " has mismatched dims");
      }
      dims_.push_back(blocks_[0][b].dim());
    }
  }

  const std::vector<std::size_t>& block_dims() const { return dims_; }
  const std::vector<double>& weights(int s) const { return weights_[s]; }
  const std::vector<DensityOperator>& block_states(int s) const { return blocks_[s]; }

  std::size_t dim() const {
    std::size_t d = 0;
    for (auto k : dims_) d += k;
    return d;
  }

  DensityOperator assembled(int s) const {
    CMatrix m(dim(), dim());
    std::size_t off = 0;
    for (std::size_t b = 0; b < dims_.size(); ++b) {
      const CMatrix& blk = blocks_[s][b].matrix();
      for (std::size_t i = 0; i < dims_[b]; ++i)
        for (std::size_t j = 0; j < dims_[b]; ++j) m(off + i, off + j) = weights_[s][b] * blk(i, j);
      off += dims_[b];
    }
    return DensityOperator(m);
  }

  /// Projector onto block b.
  CMatrix block_projector(std::size_t b) const {
    std::vector<double> diag(dim(), 0.0);
    std::size_t off = 0;
    for (std::size_t k = 0; k < b; ++k) off += dims_[k];
    for (std::size_t i = 0; i < dims_[b]; ++i) diag[off + i] = 1.0;
    return CMatrix::diagonal(diag);
  }

 private:
  std::array<std::vector<double>, 2> weights_;
  std::array<std::vector<DensityOperator>, 2> blocks_;
  std::vector<std::size_t> dims_;
};

struct BlockResult {
  /// Mutual information (bits) of the block-projector measurement.
  double info;
  /// 1/2 sum_s tr|rho_s - sum_b P_b rho_s P_b|.
  double disturbance;
  /// max |[rho0, rho1]| of the assembled states.
  double commutator_norm;
  /// info > 0 while the assembled states do not commute.
  bool is_example;
};

inline BlockResult block_counterexample(const BlockStatePair& blocks, const PriorPair& priors) {
  const std::array<DensityOperator, 2> rho{blocks.assembled(0), blocks.assembled(1)};
  std::vector<CMatrix> proj;
  for (std::size_t b = 0; b < blocks.block_dims().size(); ++b) proj.push_back(blocks.block_projector(b));
  const Povm povm(proj);
  const auto p0 = povm_probabilities(rho[0], povm);
  const auto p1 = povm_probabilities(rho[1], povm);
  const double info = mutual_information(priors, p0, p1);
  double disturbance = 0.0;
  for (const auto& r : rho) {
    CMatrix dephased(r.dim(), r.dim());
    for (const auto& p : proj) dephased += p * r.matrix() * p;
    disturbance += 0.5 * trace_norm(r.matrix() - dephased);
  }
  const double comm = commutator(rho[0].matrix(), rho[1].matrix()).max_abs();
  return {info, disturbance, comm, info > 1e-12 && comm >= kCommutationTolerance};
}

/// Two qubit blocks holding |0><0| for s = 0 and |+><+| for s = 1, with block
/// weights (0.9, 0.1) and (0.1, 0.9).
inline BlockStatePair default_block_pair() {
  const DensityOperator zero(PureState::basis(2, 0));
  const double r = std::sqrt(0.5);
  const DensityOperator plus(PureState::normalized({cplx(r), cplx(r)}));
  return BlockStatePair({0.9, 0.1}, {0.1, 0.9}, {zero, zero}, {plus, plus});
}

}  // namespace infodist

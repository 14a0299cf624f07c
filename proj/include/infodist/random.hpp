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

// Seeded generators of random operators for property checks.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "infodist/linalg.hpp"
#include "infodist/quantum.hpp"

namespace infodist::random {

using Rng = std::mt19937_64;

inline CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = n(rng);
      const double im = n(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

/// rows x cols matrix with orthonormal columns (rows >= cols).
inline CMatrix isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  for (;;) {
    if (auto q = orthonormalize_columns(ginibre(rows, cols, rng), 1e-6)) return *q;
  }
}

inline CMatrix unitary(std::size_t n, Rng& rng) { return isometry(n, n, rng); }

inline CMatrix hermitian(std::size_t n, Rng& rng) { return hermitian_part(ginibre(n, n, rng)); }

inline PureState pure_state(std::size_t n, Rng& rng) {
  return PureState::normalized(ginibre(n, 1, rng).column(0));
}

/// G G^dagger / tr, with G of shape n x rank.
inline DensityOperator density(std::size_t n, Rng& rng, std::size_t rank = 0) {
  const CMatrix g = ginibre(n, rank == 0 ? n : rank, rng);
  CMatrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  return DensityOperator(hermitian_part(m));
}

/// Diagonal state with random weights conjugated by `basis`.
inline DensityOperator diagonal_in(const CMatrix& basis, Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(basis.cols());
  double total = 0.0;
  for (auto& x : w) total += (x = u(rng));
  for (auto& x : w) x /= total;
  return DensityOperator(hermitian_part(basis * CMatrix::diagonal(w) * basis.adjoint()));
}

/// Channel with `n_kraus` operators cut from a random isometry C^d -> C^(n_kraus d).
inline KrausChannel channel(std::size_t dim, std::size_t n_kraus, Rng& rng) {
  const CMatrix v = isometry(dim * n_kraus, dim, rng);
  std::vector<CMatrix> ops;
  for (std::size_t l = 0; l < n_kraus; ++l) {
    CMatrix a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) a(i, j) = v(l * dim + i, j);
    ops.push_back(std::move(a));
  }
  return KrausChannel(std::move(ops));
}

/// POVM E_b = V_b^dagger V_b from the blocks of a random isometry.
inline Povm povm(std::size_t dim, std::size_t outcomes, Rng& rng) {
  const KrausChannel ch = channel(dim, outcomes, rng);
  std::vector<CMatrix> el;
  for (const auto& a : ch.operators()) el.push_back(a.adjoint() * a);
  return Povm(std::move(el));
}

}  // namespace infodist::random

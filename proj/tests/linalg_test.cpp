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

#include <gtest/gtest.h>

#include <cmath>

#include "infodist/linalg.hpp"
#include "infodist/random.hpp"

namespace infodist {
namespace {

TEST(CMatrix, EntriesMatchShape) {
  const CMatrix m(3, 5);
  EXPECT_EQ(m.entries().size(), 15u);
  EXPECT_THROW(CMatrix(2, 2, CVector(3)), DimensionError);
}

TEST(CMatrix, MismatchedProductThrows) {
  EXPECT_THROW(CMatrix(2, 3) * CMatrix(2, 3), DimensionError);
  EXPECT_THROW(CMatrix(2, 2) + CMatrix(3, 3), DimensionError);
}

TEST(CMatrix, HermiticityCheck) {
  const CMatrix h{{1.0, cplx(0, 1)}, {cplx(0, -1), 2.0}};
  EXPECT_TRUE(h.is_hermitian());
  const CMatrix n{{1.0, 1.0}, {0.0, 2.0}};
  EXPECT_FALSE(n.is_hermitian());
}

TEST(TensorProduct, IdentityTimesIdentity) {
  EXPECT_LT(max_abs_diff(tensor_product(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)), 1e-15);
}

TEST(TensorProduct, TraceIsMultiplicative) {
  random::Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const CMatrix a = random::hermitian(2, rng);
    const CMatrix b = random::hermitian(3, rng);
    EXPECT_NEAR(std::abs(tensor_product(a, b).trace() - a.trace() * b.trace()), 0.0, 1e-12);
  }
}

TEST(TensorProduct, HandExpandedDiagonal) {
  // Kronecker product written out: (1*1/2, 1*1/2, 0*1/2, 0*1/2).
  const CMatrix expected = CMatrix::diagonal({0.5, 0.5, 0.0, 0.0});
  EXPECT_LT(max_abs_diff(tensor_product(CMatrix::diagonal({1.0, 0.0}), CMatrix::diagonal({0.5, 0.5})), expected),
            1e-15);
}

TEST(TensorProduct, AMajorIndexing) {
  // (a (x) b)(i*db + k, j*db + l) = a(i,j) b(k,l)
  random::Rng rng(5);
  const CMatrix a = random::ginibre(2, 2, rng);
  const CMatrix b = random::ginibre(3, 3, rng);
  const CMatrix ab = tensor_product(a, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(ab(i * 3 + k, j * 3 + l), a(i, j) * b(k, l));
}

TEST(PartialTrace, ProductStateFactorizes) {
  random::Rng rng(7);
  const CMatrix rho = random::density(2, rng).matrix();
  const CMatrix sigma = random::density(3, rng).matrix();
  EXPECT_LT(max_abs_diff(partial_trace(tensor_product(rho, sigma), 2, 3, Keep::A), rho), 1e-12);
  EXPECT_LT(max_abs_diff(partial_trace(tensor_product(rho, sigma), 2, 3, Keep::E), sigma), 1e-12);
}

TEST(PartialTrace, BellStateReducesToMaximallyMixed) {
  // |Phi+> = (|00> + |11>)/sqrt 2 has entries 1/2 at (0,0), (0,3), (3,0), (3,3);
  // summing the E-diagonal blocks gives diag(1/2, 1/2).
  CMatrix bell(4, 4);
  for (std::size_t i : {0u, 3u})
    for (std::size_t j : {0u, 3u}) bell(i, j) = 0.5;
  EXPECT_LT(max_abs_diff(partial_trace(bell, 2, 2, Keep::A), 0.5 * CMatrix::identity(2)), 1e-15);
  EXPECT_LT(max_abs_diff(partial_trace(bell, 2, 2, Keep::E), 0.5 * CMatrix::identity(2)), 1e-15);
}

TEST(PartialTrace, PreservesTrace) {
  random::Rng rng(9);
  const CMatrix m = random::ginibre(6, 6, rng);
  EXPECT_NEAR(std::abs(partial_trace(m, 2, 3, Keep::A).trace() - m.trace()), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(partial_trace(m, 2, 3, Keep::E).trace() - m.trace()), 0.0, 1e-12);
}

TEST(PartialTrace, RejectsWrongDims) {
  EXPECT_THROW(partial_trace(CMatrix(6, 6), 2, 2, Keep::A), DimensionError);
}

TEST(HermEig, DiagonalValuesAscending) {
  const auto e = herm_eig(CMatrix::diagonal({3.0, 1.0, 2.0}));
  ASSERT_EQ(e.values.size(), 3u);
  EXPECT_NEAR(e.values[0], 1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 2.0, 1e-15);
  EXPECT_NEAR(e.values[2], 3.0, 1e-15);
}

TEST(HermEig, PauliX) {
  // Characteristic polynomial l^2 - 1: roots -1, 1 with eigenvectors (1, -+1)/sqrt 2.
  const CMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const auto e = herm_eig(x);
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
  const double r = std::sqrt(0.5);
  const CVector minus{r, -r};
  const CVector plus{r, r};
  EXPECT_NEAR(std::abs(inner(minus, e.vectors.column(0))), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(inner(plus, e.vectors.column(1))), 1.0, 1e-14);
}

TEST(HermEig, RandomSixBySix) {
  random::Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const CMatrix m = random::hermitian(6, rng);
    const auto e = herm_eig(m);
    EXPECT_LT(max_abs_diff(e.reconstruct(), m), 1e-10);
    EXPECT_LT(unitarity_error(e.vectors), 1e-10);
    EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
  }
}

TEST(HermEig, SixteenBySixteenDegenerate) {
  random::Rng rng(13);
  const CMatrix u = random::unitary(16, rng);
  std::vector<double> d(16, 0.25);
  d[3] = d[7] = -1.0;
  const CMatrix m = hermitian_part(u * CMatrix::diagonal(d) * u.adjoint());
  const auto e = herm_eig(m);
  EXPECT_LT(max_abs_diff(e.reconstruct(), m), 1e-10);
  EXPECT_NEAR(e.values[0], -1.0, 1e-12);
  EXPECT_NEAR(e.values[15], 0.25, 1e-12);
}

TEST(HermEig, RejectsNonHermitian) {
  EXPECT_THROW(herm_eig(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), InvariantError);
}

TEST(PsdSqrt, Examples) {
  EXPECT_LT(max_abs_diff(psd_sqrt(CMatrix::identity(3)), CMatrix::identity(3)), 1e-15);
  EXPECT_LT(max_abs_diff(psd_sqrt(CMatrix::diagonal({4.0, 9.0})), CMatrix::diagonal({2.0, 3.0})), 1e-14);
}

TEST(PsdSqrt, SquaresBack) {
  random::Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const CMatrix m = random::density(4, rng, 2).matrix();
    const CMatrix r = psd_sqrt(m);
    EXPECT_LT(max_abs_diff(r * r, m), 1e-9);
    EXPECT_GE(eigenvalues(r).front(), -1e-12);
  }
}

TEST(PsdSqrt, ClampsTinyNegativeAndRejectsLarge) {
  EXPECT_NO_THROW(psd_sqrt(CMatrix::diagonal({1.0, -5e-11})));
  EXPECT_THROW(psd_sqrt(CMatrix::diagonal({1.0, -1e-6})), InvariantError);
}

TEST(OpAbs, Examples) {
  EXPECT_LT(max_abs_diff(op_abs(CMatrix::diagonal({-1.0, 2.0})), CMatrix::diagonal({1.0, 2.0})), 1e-15);
  random::Rng rng(19);
  for (int i = 0; i < 10; ++i) {
    const CMatrix m = random::hermitian(3, rng);
    EXPECT_GE(eigenvalues(op_abs(m)).front(), -1e-12);
    EXPECT_LT(max_abs_diff(op_abs(-1.0 * m), op_abs(m)), 1e-12);
  }
}

TEST(TraceNorm, Examples) {
  EXPECT_NEAR(trace_norm(CMatrix::diagonal({-0.5, 0.5})), 1.0, 1e-15);
  EXPECT_EQ(trace_norm(CMatrix(3, 3)), 0.0);
  const double r = std::sqrt(0.5);
  const CMatrix p0 = CMatrix::projector(CVector{1.0, 0.0});
  const CMatrix p1 = CMatrix::projector(CVector{r, r});
  // 2 sqrt(1 - |<0|+>|^2) with |<0|+>|^2 = 1/2.
  EXPECT_NEAR(trace_norm(p1 - p0), 2.0 * std::sqrt(1.0 - 0.5), 1e-14);
}

TEST(TraceNorm, BoundsTrace) {
  random::Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    const CMatrix m = random::hermitian(4, rng);
    EXPECT_GE(trace_norm(m) + 1e-12, std::abs(m.trace()));
  }
}

TEST(Orthonormalize, RejectsDependentColumns) {
  const CMatrix m{{1.0, 2.0}, {1.0, 2.0}};
  EXPECT_FALSE(orthonormalize_columns(m).has_value());
  random::Rng rng(29);
  const auto q = orthonormalize_columns(random::ginibre(5, 3, rng));
  ASSERT_TRUE(q.has_value());
  EXPECT_LT(max_abs_diff(q->adjoint() * *q, CMatrix::identity(3)), 1e-12);
}

}  // namespace
}  // namespace infodist

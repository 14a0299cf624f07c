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

#include <algorithm>
#include <cmath>

#include "infodist/broadcast.hpp"
#include "infodist/random.hpp"

namespace infodist {
namespace {

const double kR = std::sqrt(0.5);

DensityOperator ket(std::size_t i) { return DensityOperator(PureState::basis(2, i)); }
DensityOperator plus() { return DensityOperator(PureState(CVector{kR, kR})); }

OptimizerConfig small_config(int restarts) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  return cfg;
}

double max_error(const BroadcastAttempt& a) {
  return *std::max_element(a.marginal_errors.begin(), a.marginal_errors.end());
}

TEST(BroadcastCommuting, DiagonalPair) {
  const DensityOperator r0(CMatrix::diagonal({0.9, 0.1}));
  const DensityOperator r1(CMatrix::diagonal({0.1, 0.9}));
  const auto a = broadcast_commuting(r0, r1);
  EXPECT_LT(max_error(a), 1e-12);
  EXPECT_NEAR(a.score, 1.0, 1e-12);
  EXPECT_TRUE(a.converged);
  // R_0 = 0.9|00><00| + 0.1|11><11|.
  EXPECT_LT(max_abs_diff(a.joint[0].matrix(), CMatrix::diagonal({0.9, 0.0, 0.0, 0.1})), 1e-12);
  // Correlated, so not the product rho0 (x) rho0: purity 0.82 against 0.82^2.
  EXPECT_NEAR(a.joint[0].purity(), 0.82, 1e-12);
  EXPECT_NEAR(DensityOperator(tensor_product(r0.matrix(), r0.matrix())).purity(), 0.82 * 0.82, 1e-12);
}

TEST(BroadcastCommuting, OrthogonalAndIdenticalPairs) {
  EXPECT_LT(max_error(broadcast_commuting(ket(0), ket(1))), 1e-12);
  const DensityOperator mixed(CMatrix::diagonal({0.3, 0.7}));
  EXPECT_LT(max_error(broadcast_commuting(mixed, mixed)), 1e-12);
  // Degenerate spectrum in the first state.
  EXPECT_LT(max_error(broadcast_commuting(DensityOperator::maximally_mixed(2), mixed)), 1e-12);
}

TEST(BroadcastCommuting, RandomCommutingPairs) {
  random::Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 2 + i % 3;
    const CMatrix u = random::unitary(n, rng);
    const DensityOperator r0 = random::diagonal_in(u, rng);
    const DensityOperator r1 = random::diagonal_in(u, rng);
    const auto a = broadcast_commuting(r0, r1);
    EXPECT_LT(max_error(a), 1e-9) << "pair " << i;
    for (int s = 0; s < 2; ++s) EXPECT_NEAR(a.joint[s].matrix().trace().real(), 1.0, 1e-10);
  }
}

TEST(BroadcastCommuting, RejectsNoncommutingPair) {
  EXPECT_THROW(broadcast_commuting(ket(0), plus()), DomainError);
  EXPECT_THROW(broadcast_commuting(ket(0), DensityOperator::maximally_mixed(3)), DimensionError);
}

TEST(CloneCheck, OrthogonalAndIdenticalStatesClone) {
  EXPECT_GT(clone_check(ket(0), ket(1), small_config(4)).score, 1.0 - 1e-6);
  EXPECT_GT(clone_check(plus(), plus(), small_config(4)).score, 1.0 - 1e-6);
}

TEST(CloneCheck, NonorthogonalPureStatesDoNotClone) {
  EXPECT_LT(clone_check(ket(0), plus(), small_config(4)).score, 1.0 - 1e-3);
}

TEST(SearchBroadcaster, CommutingPairWithTrivialEnvironment) {
  const DensityOperator r0(CMatrix::diagonal({0.9, 0.1}));
  const DensityOperator r1(CMatrix::diagonal({0.1, 0.9}));
  const auto a = search_broadcaster(r0, r1, 1, small_config(4));
  EXPECT_GT(a.score, 1.0 - 1e-6);
  EXPECT_NEAR(a.score, 1.0 - max_error(a), 1e-15);
}

TEST(SearchBroadcaster, CommutingPairWithLargerEnvironment) {
  const DensityOperator r0(CMatrix::diagonal({0.9, 0.1}));
  const DensityOperator r1(CMatrix::diagonal({0.1, 0.9}));
  OptimizerConfig cfg = small_config(4);
  cfg.max_iterations = 20000;
  EXPECT_GT(search_broadcaster(r0, r1, 2, cfg).score, 1.0 - 1e-6);
}

TEST(SearchBroadcaster, IdenticalStates) {
  const auto pair = designated_noncommuting_pair();
  for (int env : {1, 2}) EXPECT_GT(search_broadcaster(pair[1], pair[1], env, small_config(4)).score, 1.0 - 1e-6);
}

TEST(SearchBroadcaster, DesignatedNoncommutingPairFails) {
  const auto pair = designated_noncommuting_pair();
  EXPECT_GT(commutator(pair[0].matrix(), pair[1].matrix()).max_abs(), 1e-3);
  for (int env : {1, 2}) {
    const auto a = search_broadcaster(pair[0], pair[1], env, small_config(4));
    EXPECT_LT(a.score, 1.0 - 1e-3) << "env " << env;
    for (int s = 0; s < 2; ++s) EXPECT_NEAR(a.joint[s].matrix().trace().real(), 1.0, 1e-10);
  }
  EXPECT_THROW(search_broadcaster(pair[0], pair[1], 0, small_config(1)), DomainError);
}

TEST(BlockStatePair, Validation) {
  EXPECT_THROW(BlockStatePair({0.5, 0.5}, {1.0}, {ket(0), ket(0)}, {ket(0)}), DimensionError);
  EXPECT_THROW(BlockStatePair({0.6, 0.5}, {0.5, 0.5}, {ket(0), ket(0)}, {ket(0), ket(0)}), InvariantError);
  EXPECT_THROW(BlockStatePair({1.5, -0.5}, {0.5, 0.5}, {ket(0), ket(0)}, {ket(0), ket(0)}), InvariantError);
  EXPECT_THROW(BlockStatePair({1.0}, {1.0}, {ket(0)}, {DensityOperator::maximally_mixed(3)}), DimensionError);
}

TEST(BlockStatePair, AssemblyAndProjectors) {
  const auto blocks = default_block_pair();
  EXPECT_EQ(blocks.dim(), 4u);
  const CMatrix a0 = blocks.assembled(0).matrix();
  EXPECT_NEAR(a0(0, 0).real(), 0.9, 1e-15);
  EXPECT_NEAR(a0(2, 2).real(), 0.1, 1e-15);
  const CMatrix p0 = blocks.block_projector(0);
  EXPECT_LT(max_abs_diff(p0 + blocks.block_projector(1), CMatrix::identity(4)), 1e-15);
  EXPECT_LT(max_abs_diff(p0 * p0, p0), 1e-15);
  for (int s = 0; s < 2; ++s) {
    const CMatrix r = blocks.assembled(s).matrix();
    CMatrix dephased = p0 * r * p0;
    dephased += blocks.block_projector(1) * r * blocks.block_projector(1);
    EXPECT_LT(max_abs_diff(dephased, r), 1e-12);
  }
}

TEST(BlockCounterexample, DefaultPair) {
  const auto res = block_counterexample(default_block_pair(), {});
  // Outcome distributions (0.9, 0.1) and (0.1, 0.9): I = 1 - h(0.9).
  const double h = -(0.9 * std::log2(0.9) + 0.1 * std::log2(0.1));
  EXPECT_NEAR(res.info, 1.0 - h, 1e-12);
  EXPECT_NEAR(res.info, 0.5310044064107189, 1e-12);
  EXPECT_NEAR(res.disturbance, 0.0, 1e-12);
  EXPECT_GT(res.commutator_norm, 1e-3);
  EXPECT_TRUE(res.is_example);
}

TEST(BlockCounterexample, EqualWeightsGiveNoInformation) {
  const BlockStatePair blocks({0.5, 0.5}, {0.5, 0.5}, {ket(0), ket(0)}, {plus(), plus()});
  const auto res = block_counterexample(blocks, {});
  EXPECT_NEAR(res.info, 0.0, 1e-12);
  EXPECT_NEAR(res.disturbance, 0.0, 1e-12);
  EXPECT_FALSE(res.is_example);
}

TEST(BlockCounterexample, CommutingBlocksAreNotExamples) {
  const BlockStatePair blocks({0.9, 0.1}, {0.1, 0.9}, {ket(0), ket(1)}, {ket(0), ket(1)});
  const auto res = block_counterexample(blocks, {});
  EXPECT_GT(res.info, 0.1);
  EXPECT_FALSE(res.is_example);
}

}  // namespace
}  // namespace infodist

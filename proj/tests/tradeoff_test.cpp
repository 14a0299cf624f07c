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
#include <numbers>
#include <random>

#include "infodist/measures.hpp"
#include "infodist/tradeoff.hpp"
#include "infodist/verify.hpp"

namespace infodist {
namespace {

constexpr double kPi = std::numbers::pi;
const double kS = std::sqrt(0.5);  // overlap at alpha = pi/8

ProbeParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  return {u(rng), u(rng), u(rng)};
}

// phi in [0, pi/4] with d_min(phi) = d, by bisection (d_min decreases on that range).
double phi_for(double d, double s) {
  double lo = 0.0, hi = 0.25 * kPi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (d_min(mid, s) > d ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(PurePair, StatesAndOverlap) {
  const PurePair pair(kPi / 8);
  const double c = std::cos(kPi / 8), s = std::sin(kPi / 8);
  EXPECT_NEAR(pair.state(0).amplitudes()[0].real(), c, 1e-15);
  EXPECT_NEAR(pair.state(0).amplitudes()[1].real(), s, 1e-15);
  EXPECT_NEAR(pair.state(1).amplitudes()[0].real(), s, 1e-15);
  EXPECT_NEAR(pair.state(1).amplitudes()[1].real(), c, 1e-15);
  EXPECT_NEAR(pair.s_overlap(), inner(pair.state(0).amplitudes(), pair.state(1).amplitudes()).real(), 1e-12);
  EXPECT_NEAR(pair.s_overlap(), kS, 1e-15);
  EXPECT_FALSE(PurePair(0.0).nondegenerate());
  EXPECT_FALSE(PurePair(kPi / 4).nondegenerate());
}

TEST(ProbeParams, UnitarityIdentities) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_params(rng).x();
    EXPECT_NEAR(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + x[4] * x[4], 1.0, 1e-12);
    EXPECT_NEAR(x[0] * x[4] + x[1] * x[3], 0.0, 1e-12);
  }
}

TEST(ProbeVectors, Examples) {
  const auto v = probe_vectors({kPi / 2, 0.3, 0.7});
  EXPECT_NEAR(v.r[0][0][2], 1.0, 1e-15);
  EXPECT_NEAR(v.r[1][1][2], 1.0, 1e-15);
  for (int b = 0; b < 3; ++b) {
    EXPECT_NEAR(v.r[0][1][b], 0.0, 1e-15);
    EXPECT_NEAR(v.r[1][0][b], 0.0, 1e-15);
  }
  const auto w = probe_vectors({0.0, 0.0, 0.0});
  EXPECT_EQ(w.r[0][0], (Vec3{1.0, 0.0, 0.0}));
  EXPECT_EQ(w.r[1][1], (Vec3{0.0, 1.0, 0.0}));
  EXPECT_EQ(w.r[0][1], (Vec3{0.0, 0.0, 0.0}));
}

TEST(ProbeVectors, NormsAndInterchangeSymmetry) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto v = probe_vectors(random_params(rng));
    EXPECT_NEAR(dot(v.r[0][0], v.r[0][0]) + dot(v.r[0][1], v.r[0][1]), 1.0, 1e-12);
    EXPECT_NEAR(dot(v.r[1][1], v.r[1][1]) + dot(v.r[1][0], v.r[1][0]), 1.0, 1e-12);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d)
            EXPECT_NEAR(dot(v.r[a][b], v.r[c][d]), dot(v.r[1 - a][1 - b], v.r[1 - c][1 - d]), 1e-12);
  }
}

TEST(EveState, Examples) {
  const PurePair pair(0.3);
  for (int s = 0; s < 2; ++s) {
    const CMatrix e = eve_state_direct(pair, {kPi / 2, 0.4, 0.1}, s).matrix();
    EXPECT_LT(max_abs_diff(e, CMatrix::diagonal({0.0, 0.0, 1.0})), 1e-15);
  }
}

TEST(EveState, ClosedFormMatchesDirectOnGrid) {
  double worst = 0.0;
  verify::TradeoffGrid{}.for_each([&](const PurePair& pair, const ProbeParams& p) {
    for (int s = 0; s < 2; ++s) {
      worst = std::max(worst, max_abs_diff(eve_state_closed(pair, p, s), eve_state_direct(pair, p, s).matrix()));
      worst = std::max(worst, max_abs_diff(alice_state_closed(pair, p, s), alice_state_direct(pair, p, s).matrix()));
    }
  });
  EXPECT_LT(worst, 1e-10);
}

TEST(EveState, InputInterchangeSymmetry) {
  // Swapping cos a and sin a maps alpha to pi/2 - alpha.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const ProbeParams p = random_params(rng);
    const double a = 0.1 + 0.01 * i;
    EXPECT_LT(max_abs_diff(eve_state_direct(PurePair(a), p, 1).matrix(),
                           eve_state_direct(PurePair(0.5 * kPi - a), p, 0).matrix()),
              1e-12);
  }
}

TEST(AliceState, Examples) {
  const PurePair pair(0.3);
  for (int s = 0; s < 2; ++s) {
    EXPECT_LT(max_abs_diff(alice_state_direct(pair, {kPi / 2, 0.2, 0.9}, s).matrix(), pair.density(s).matrix()),
              1e-15);
  }
  EXPECT_NEAR(alice_state_closed(pair, {0.0, 0.0, 0.77}, 0)(0, 0).real(), std::cos(0.3) * std::cos(0.3), 1e-15);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    EXPECT_NEAR(alice_state_direct(pair, random_params(rng), i % 2).matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(PeClosed, Examples) {
  const PurePair pair(kPi / 8);
  EXPECT_NEAR(pe_closed(pair, {kPi / 2, 0.3, 0.2}), 0.5, 1e-15);
  // G = 1 and cos 2a = sqrt2/2.
  EXPECT_NEAR(pe_closed(pair, {0.0, 0.0, 0.0}), 0.5 - 0.5 * std::cos(kPi / 4), 1e-15);
  EXPECT_NEAR(pe_closed(pair, {0.0, 0.0, 0.0}), 0.1464466094067262, 1e-12);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(pe_closed(PurePair(kPi / 4), random_params(rng)), 0.5, 1e-15);
}

TEST(DisturbanceClosed, Examples) {
  const PurePair pair(kPi / 8);
  EXPECT_NEAR(disturbance_closed(pair, {kPi / 2, 0.3, 0.2}), 0.0, 1e-15);
  EXPECT_NEAR(disturbance_closed(pair, {0.4, 0.0, kPi / 4}), 0.0, 1e-15);
  const double theta = 0.5 * std::atan(kS / (1.0 - kS * kS));
  EXPECT_NEAR(disturbance_closed(pair, {0.0, theta, 0.0}), 0.5 - 0.5 * std::sqrt(0.75), 1e-12);
}

TEST(ClosedForms, MatchDirectComputation) {
  double worst = 0.0;
  verify::TradeoffGrid{}.for_each([&](const PurePair& pair, const ProbeParams& p) {
    const double h = helstrom({}, eve_state_direct(pair, p, 0), eve_state_direct(pair, p, 1)).error_probability;
    const double d = disturbance_avg_fidelity(pair.density(0), pair.density(1), alice_state_direct(pair, p, 0),
                                              alice_state_direct(pair, p, 1));
    worst = std::max({worst, std::abs(pe_closed(pair, p) - h), std::abs(disturbance_closed(pair, p) - d)});
  });
  EXPECT_LT(worst, 1e-9);
}

TEST(OptimalTheta, Examples) {
  EXPECT_NEAR(optimal_theta(kPi / 4, kS).theta, 0.0, 1e-15);
  EXPECT_NEAR(optimal_theta(0.3, 0.0).theta, 0.0, 1e-15);
  EXPECT_NEAR(optimal_theta(0.0, kS).theta, 0.5 * std::atan(std::sqrt(2.0)), 1e-14);
  EXPECT_NEAR(optimal_theta(0.0, kS).theta, 0.47780, 2e-4);
  EXPECT_FALSE(optimal_theta(0.0, kS).limit_case);
}

TEST(OptimalTheta, MinimizesAgainstScan) {
  for (double s : {0.2, kS, 0.9, 0.99}) {
    for (double phi = -0.7; phi <= 0.7; phi += 0.1) {
      const double theta = optimal_theta(phi, s).theta;
      const PurePair pair(0.5 * std::asin(s));
      const double at = disturbance_closed(pair, {0.0, theta, phi});
      EXPECT_NEAR(at, d_min(phi, s), 1e-10);
      double scan = 1.0;
      for (int k = 0; k <= 4000; ++k) scan = std::min(scan, disturbance_closed(pair, {0.0, -kPi / 2 + kPi * k / 4000, phi}));
      EXPECT_LE(at, scan + 1e-12);
    }
  }
}

TEST(OptimalTheta, VanishingDenominatorIsFlagged) {
  // 1 - S^2 (1 - sin 2phi) = 0 at S = 1, phi = 0.
  const auto t = optimal_theta(0.0, 1.0);
  EXPECT_TRUE(t.limit_case);
  EXPECT_NEAR(std::abs(t.theta), kPi / 4, 1e-15);
}

TEST(DMin, Examples) {
  EXPECT_NEAR(d_min(kPi / 4, kS), 0.0, 1e-15);
  for (double phi : {-0.5, 0.0, 0.3}) EXPECT_NEAR(d_min(phi, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(d_min(0.0, kS), 0.5 - 0.5 * std::sqrt(0.75), 1e-15);
  EXPECT_NEAR(d_min(0.0, kS), d_zero(kS), 1e-15);
}

TEST(DZero, Examples) {
  EXPECT_NEAR(d_zero(0.0), 0.0, 1e-15);
  EXPECT_NEAR(d_zero(1.0), 0.0, 1e-15);
  EXPECT_NEAR(d_zero(kS), 0.0669872981077807, 1e-15);
}

TEST(GOpt, Examples) {
  EXPECT_NEAR(g_opt(0.0, kS), 0.0, 1e-15);
  EXPECT_NEAR(g_opt(d_zero(kS), kS), 1.0, 1e-12);
  EXPECT_NEAR(g_opt(0.5 * d_zero(kS), kS), 0.921424549765285, 1e-12);
  EXPECT_THROW(g_opt(0.1, kS), DomainError);
  EXPECT_THROW(g_opt(-1e-3, kS), DomainError);
  EXPECT_THROW(g_opt(0.0, 1.0), DomainError);
  EXPECT_THROW(g_opt(0.0, 0.0), DomainError);
}

TEST(GOpt, InvertsTheTwoStateProbeCurve) {
  // On the two-state probe (lambda = 0, theta optimal) G = cos^2 2phi at D = d_min(phi).
  for (double s : {0.3, kS, 0.9}) {
    const double d0 = d_zero(s);
    for (int k = 1; k < 20; ++k) {
      const double d = d0 * k / 20;
      const double phi = phi_for(d, s);
      EXPECT_NEAR(g_opt(d, s), std::cos(2 * phi) * std::cos(2 * phi), 1e-9);
    }
  }
}

TEST(PeOpt, Examples) {
  const PurePair pair(kPi / 8);
  const double d0 = d_zero(kS);
  EXPECT_NEAR(pe_opt(0.0, pair), 0.5, 1e-15);
  EXPECT_NEAR(pe_opt(d0, pair), 0.5 * (1.0 - std::sqrt(1.0 - kS * kS)), 1e-12);
  EXPECT_NEAR(pe_opt(d0, pair), helstrom({}, pair.density(0), pair.density(1)).error_probability, 1e-12);
  EXPECT_NEAR(pe_opt(0.5 * d0, pair), 0.16062105439397, 1e-12);
}

TEST(AnalyticCurve, Shape) {
  const PurePair pair(kPi / 8);
  const auto c = analytic_curve(pair, 101);
  ASSERT_EQ(c.points.size(), 101u);
  EXPECT_EQ(c.points.front().d, 0.0);
  EXPECT_NEAR(c.points.front().pe, 0.5, 1e-15);
  EXPECT_EQ(c.points.back().d, c.d_zero);
  EXPECT_NEAR(c.points.back().pe, helstrom({}, pair.density(0), pair.density(1)).error_probability, 1e-9);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    EXPECT_EQ(c.points[i].provenance, Provenance::Analytic);
    EXPECT_EQ(c.points[i].pe, pe_opt(c.points[i].d, pair));
    if (i > 0) {
      EXPECT_LE(c.points[i].pe, c.points[i - 1].pe + 1e-9);
    }
  }
  EXPECT_THROW(analytic_curve(PurePair(kPi / 4), 5), DomainError);
  EXPECT_THROW(analytic_curve(pair, 1), DomainError);
}

TEST(NoInformationWithoutDisturbance, OnGrid) {
  int hits = 0;
  verify::TradeoffGrid{}.for_each([&](const PurePair& pair, const ProbeParams& p) {
    if (disturbance_closed(pair, p) < 1e-9) {
      ++hits;
      EXPECT_GT(pe_closed(pair, p), 0.5 - 1e-6);
    }
  });
  EXPECT_GT(hits, 0);
}

}  // namespace
}  // namespace infodist

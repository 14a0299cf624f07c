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

// Information/disturbance tradeoff for two real pure states
//   |0> = cos a |a0> + sin a |a1>,   |1> = sin a |a0> + cos a |a1>
// probed by the symmetric three-angle interaction family
//   U |a_m>|psi> = sum_n |a_n>|R_mn>,   |R_mn> in a real 3-dim probe space.
// Information is Eve's Helstrom error P_e (equal priors); disturbance is
// D = 1 - (1/2)<0|rhoA_0|0> - (1/2)<1|rhoA_1|1>.
//
// The vector construction (eve_state_direct / alice_state_direct) is the
// ground truth; the *_closed functions are the hand-simplified expressions
// and are cross-checked against it.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "infodist/error.hpp"
#include "infodist/linalg.hpp"
#include "infodist/quantum.hpp"

namespace infodist {

class PurePair {
 public:
  explicit PurePair(double alpha)
      : alpha_(alpha),
        state0_(CVector{std::cos(alpha), std::sin(alpha)}),
        state1_(CVector{std::sin(alpha), std::cos(alpha)}) {}

  double alpha() const { return alpha_; }
  /// <0|1> = sin 2a
  double s_overlap() const { return std::sin(2.0 * alpha_); }
  const PureState& state(int s) const { return s == 0 ? state0_ : state1_; }
  DensityOperator density(int s) const { return DensityOperator(state(s)); }
  /// c_sm, the coefficient of |a_m> in |s>.
  double coefficient(int s, int m) const {
    return (s == m) ? std::cos(alpha_) : std::sin(alpha_);
  }
  /// alpha strictly inside (0, pi/4): the states are neither orthogonal nor identical.
  bool nondegenerate() const {
    const double gamma = s_overlap() * s_overlap() * (1.0 - s_overlap() * s_overlap());
    return gamma > 1e-12;
  }

 private:
  double alpha_;
  PureState state0_;
  PureState state1_;
};

struct ProbeParams {
  double lambda = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  /// X1..X5 of the reduced parameterization.
  std::array<double, 5> x() const {
    const double cl = std::cos(lambda);
    return {cl * std::cos(theta) * std::cos(phi), cl * std::cos(theta) * std::sin(phi),
            std::sin(lambda), cl * std::sin(theta) * std::cos(phi),
            -cl * std::sin(theta) * std::sin(phi)};
  }
};

using Vec3 = std::array<double, 3>;

/// r[m][n] = |R_mn>
struct ProbeVectors {
  std::array<std::array<Vec3, 2>, 2> r;
};

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline ProbeVectors probe_vectors(const ProbeParams& p) {
  const auto [x1, x2, x3, x4, x5] = p.x();
  ProbeVectors v;
  v.r[0][0] = {x1, x2, x3};
  v.r[0][1] = {x4, x5, 0.0};
  v.r[1][0] = {x5, x4, 0.0};
  v.r[1][1] = {x2, x1, x3};
  return v;
}

/// rhoE_s = sum_n |R_n^s><R_n^s| with |R_n^s> = sum_m c_sm |R_mn>, basis (e_x, e_y, e_z).
inline DensityOperator eve_state_direct(const PurePair& pair, const ProbeParams& p, int s) {
  const auto v = probe_vectors(p);
  CMatrix rho(3, 3);
  for (int n = 0; n < 2; ++n) {
    Vec3 rs{};
    for (int m = 0; m < 2; ++m)
      for (int b = 0; b < 3; ++b) rs[b] += pair.coefficient(s, m) * v.r[m][n][b];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rho(i, j) += rs[i] * rs[j];
  }
  return DensityOperator(rho);
}

/// rhoA_s = sum_beta |Q_beta^s><Q_beta^s| with <a_n|Q_beta^s> = sum_m c_sm <e_beta|R_mn>.
inline DensityOperator alice_state_direct(const PurePair& pair, const ProbeParams& p, int s) {
  const auto v = probe_vectors(p);
  CMatrix rho(2, 2);
  for (int beta = 0; beta < 3; ++beta) {
    std::array<double, 2> q{};
    for (int n = 0; n < 2; ++n)
      for (int m = 0; m < 2; ++m) q[n] += pair.coefficient(s, m) * v.r[m][n][beta];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) rho(i, j) += q[i] * q[j];
  }
  return DensityOperator(rho);
}

namespace detail {
// (cos a, sin a) for s = 0 and the interchanged pair for s = 1.
inline std::pair<double, double> cos_sin_for(const PurePair& pair, int s) {
  const double c = std::cos(pair.alpha());
  const double sn = std::sin(pair.alpha());
  return s == 0 ? std::pair{c, sn} : std::pair{sn, c};
}
}  // namespace detail

/// Hand-simplified matrix elements of Eve's state (real symmetric 3x3).
inline CMatrix eve_state_closed(const PurePair& pair, const ProbeParams& p, int s) {
  const auto [ca, sa] = detail::cos_sin_for(pair, s);
  const double l = p.lambda, t = p.theta, f = p.phi;
  const double cl2 = std::cos(l) * std::cos(l);
  const double c2a = ca * ca - sa * sa;
  const double s2l = std::sin(2.0 * l);
  const double xx = 0.5 * cl2 * (1.0 + c2a * std::cos(2.0 * f));
  const double yy = 0.5 * cl2 * (1.0 - c2a * std::cos(2.0 * f));
  const double xy = 0.25 * cl2 *
                    ((ca - sa) * (ca - sa) * std::sin(2.0 * (f - t)) +
                     (ca + sa) * (ca + sa) * std::sin(2.0 * (f + t)));
  const double cross = ca * sa * (std::cos(f) - std::sin(f)) * std::sin(t);
  const double xz = 0.5 * s2l *
                    (sa * sa * std::sin(f) * std::cos(t) + ca * ca * std::cos(f) * std::cos(t) + cross);
  const double yz = 0.5 * s2l *
                    (ca * ca * std::sin(f) * std::cos(t) + sa * sa * std::cos(f) * std::cos(t) + cross);
  const double zz = std::sin(l) * std::sin(l);
  return CMatrix{{xx, xy, xz}, {xy, yy, yz}, {xz, yz, zz}};
}

/// Hand-simplified matrix elements of Alice's state (real symmetric 2x2).
inline CMatrix alice_state_closed(const PurePair& pair, const ProbeParams& p, int s) {
  const auto [ca, sa] = detail::cos_sin_for(pair, s);
  const double l = p.lambda, t = p.theta, f = p.phi;
  const double cl2 = std::cos(l) * std::cos(l);
  const double sl2 = std::sin(l) * std::sin(l);
  const double ct2 = std::cos(t) * std::cos(t);
  const double st2 = std::sin(t) * std::sin(t);
  const double a00 = ca * ca * (cl2 * ct2 + sl2) + sa * sa * cl2 * st2;
  const double a11 = sa * sa * (cl2 * ct2 + sl2) + ca * ca * cl2 * st2;
  const double a01 = ca * sa * (sl2 + cl2 * std::sin(2.0 * f) * std::cos(2.0 * t)) +
                     0.5 * cl2 * std::cos(2.0 * f) * std::sin(2.0 * t);
  return CMatrix{{a00, a01}, {a01, a11}};
}

namespace detail {
// G with the coefficient of the sin^2(2 lambda) term exposed so verification
// suites can inject a fault into the closed form.
inline double g_closed_with(const ProbeParams& p, double cross_coefficient) {
  const double cl = std::cos(p.lambda);
  const double c2f = std::cos(2.0 * p.phi);
  const double s2l = std::sin(2.0 * p.lambda);
  const double ct = std::cos(p.theta);
  return cl * cl * cl * cl * c2f * c2f +
         cross_coefficient * s2l * s2l * (1.0 - std::sin(2.0 * p.phi)) * ct * ct;
}
inline double pe_closed_with(const PurePair& pair, const ProbeParams& p, double cross_coefficient) {
  const double g = std::max(g_closed_with(p, cross_coefficient), 0.0);
  return 0.5 - 0.5 * std::cos(2.0 * pair.alpha()) * std::sqrt(g);
}
}  // namespace detail

/// G(U) = cos^4 l cos^2 2f + 1/2 sin^2 2l (1 - sin 2f) cos^2 t; P_e = 1/2 - 1/2 cos 2a sqrt(G).
inline double g_closed(const ProbeParams& p) { return detail::g_closed_with(p, 0.5); }

/// Eve's Helstrom error for the interaction, in closed form.
inline double pe_closed(const PurePair& pair, const ProbeParams& p) {
  return detail::pe_closed_with(pair, p, 0.5);
}

/// Disturbance of the interaction, in closed form.
inline double disturbance_closed(const PurePair& pair, const ProbeParams& p) {
  const double s = pair.s_overlap();
  const double cl = std::cos(p.lambda);
  const double st = std::sin(p.theta);
  return cl * cl *
         (st * st - 0.5 * s * std::cos(2.0 * p.phi) * std::sin(2.0 * p.theta) +
          0.5 * s * s * (1.0 - std::sin(2.0 * p.phi)) * std::cos(2.0 * p.theta));
}

struct ThetaChoice {
  double theta;
  /// Denominator 1 - S^2 (1 - sin 2f) vanished; theta is the +-pi/4 limit.
  bool limit_case;
};

/// theta minimizing the disturbance of the two-state probe (lambda = 0) at fixed phi,
/// i.e. the minimizing root of tan 2t = S cos 2f / (1 - S^2 (1 - sin 2f)).
inline ThetaChoice optimal_theta(double phi, double s_overlap) {
  const double num = s_overlap * std::cos(2.0 * phi);
  const double den = 1.0 - s_overlap * s_overlap * (1.0 - std::sin(2.0 * phi));
  const bool limit = std::abs(den) < 1e-12;
  // Roots of tan 2t = num/den lie pi/2 apart; compare D on both.
  const double principal = limit ? (num >= 0.0 ? 0.25 : -0.25) * std::numbers::pi
                                 : 0.5 * std::atan(num / den);
  const double other = principal > 0.0 ? principal - 0.5 * std::numbers::pi
                                        : principal + 0.5 * std::numbers::pi;
  // lambda = 0 slice of disturbance_closed, independent of alpha beyond S.
  auto d_at = [&](double t) {
    const double st = std::sin(t);
    return st * st - 0.5 * s_overlap * std::cos(2.0 * phi) * std::sin(2.0 * t) +
           0.5 * s_overlap * s_overlap * (1.0 - std::sin(2.0 * phi)) * std::cos(2.0 * t);
  };
  return {d_at(other) < d_at(principal) ? other : principal, limit};
}

/// Minimal disturbance at fixed phi for the two-state probe.
inline double d_min(double phi, double s_overlap) {
  const double s2 = s_overlap * s_overlap;
  const double c2f = std::cos(2.0 * phi);
  const double b = 1.0 - s2 * (1.0 - std::sin(2.0 * phi));
  return 0.5 - 0.5 * std::sqrt(s2 * c2f * c2f + b * b);
}

/// Smallest disturbance compatible with maximal information gain.
inline double d_zero(double s_overlap) {
  const double s2 = s_overlap * s_overlap;
  return 0.5 - 0.5 * std::sqrt(1.0 - s2 + s2 * s2);
}

/// Largest attainable G at disturbance d in [0, d_zero(S)].
inline double g_opt(double d, double s_overlap) {
  const double s2 = s_overlap * s_overlap;
  const double gamma = s2 - s2 * s2;
  if (!(gamma > 1e-12)) {
    throw DomainError("g_opt: degenerate overlap S = " + std::to_string(s_overlap) +
                      " (states orthogonal or identical)");
  }
  const double d0 = d_zero(s_overlap);
  if (!(d >= 0.0 && d <= d0 + 1e-12)) {
    throw DomainError("g_opt: disturbance " + std::to_string(d) + " outside [0, " +
                      std::to_string(d0) + "]");
  }
  d = std::min(d, d0);
  const double ratio = d * (1.0 - d) / (d0 * (1.0 - d0));
  return std::clamp(2.0 * std::sqrt(ratio) - ratio, 0.0, 1.0);
}

/// Optimal tradeoff curve P_e^opt(d) = 1/2 - 1/2 cos 2a sqrt(g_opt(d)).
inline double pe_opt(double d, const PurePair& pair) {
  return 0.5 - 0.5 * std::cos(2.0 * pair.alpha()) * std::sqrt(g_opt(d, pair.s_overlap()));
}

enum class Provenance { Analytic, Numeric };

struct CurvePoint {
  double d;
  double pe;
  Provenance provenance;
};

struct TradeoffCurve {
  double alpha;
  double d_zero;
  std::vector<CurvePoint> points;
};

/// pe_opt sampled on a uniform grid over [0, d_zero].
inline TradeoffCurve analytic_curve(const PurePair& pair, int n_points) {
  if (n_points < 2) throw DomainError("analytic_curve: need at least 2 points");
  if (!pair.nondegenerate()) {
    throw DomainError("analytic_curve: degenerate pair (alpha = " + std::to_string(pair.alpha()) +
                      ")");
  }
  const double d0 = d_zero(pair.s_overlap());
  TradeoffCurve curve{pair.alpha(), d0, {}};
  curve.points.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double d = i == n_points - 1 ? d0 : d0 * static_cast<double>(i) / (n_points - 1);
    curve.points.push_back({d, pe_opt(d, pair), Provenance::Analytic});
  }
  return curve;
}

}  // namespace infodist

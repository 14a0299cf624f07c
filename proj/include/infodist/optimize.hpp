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

// Numerical cross-checks of the analytic tradeoff: derivative-free,
// multi-start minimization of Eve's error at fixed disturbance, over the
// three-angle probe family and over general isometric probes.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "infodist/eavesdrop.hpp"
#include "infodist/error.hpp"
#include "infodist/linalg.hpp"
#include "infodist/measures.hpp"
#include "infodist/quantum.hpp"
#include "infodist/tradeoff.hpp"

namespace infodist {

// ---------------------------------------------------------------------------
// Generic machinery

struct NelderMeadOptions {
  int max_evaluations = 4000;
  double x_tolerance = 1e-10;
  double f_tolerance = 1e-15;
  double initial_step = 0.1;
  /// Re-seeded simplex runs from the incumbent after the first convergence.
  int polish_restarts = 2;
};

struct Minimum {
  std::vector<double> x;
  double f = std::numeric_limits<double>::infinity();
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

template <typename F>
Minimum nelder_mead_run(F& f, const std::vector<double>& x0, double step, int budget,
                        const NelderMeadOptions& o) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  // Dimension-adaptive coefficients (Gao & Han).
  const double rho = 1.0;
  const double chi = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 0.5 / dn;
  const double sigma = 1.0 - 1.0 / dn;

  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(std::span<const double>(x));
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

  std::vector<std::size_t> idx(n + 1);
  std::vector<double> c(n), xr(n), xe(n), xc(n);
  bool converged = false;
  while (evals < budget) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
    {
      std::vector<std::vector<double>> p2(n + 1);
      std::vector<double> f2(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        p2[i] = std::move(pts[idx[i]]);
        f2[i] = fv[idx[i]];
      }
      pts = std::move(p2);
      fv = std::move(f2);
    }
    double diam = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) diam = std::max(diam, std::abs(pts[i][k] - pts[0][k]));
    if (diam <= o.x_tolerance && fv[n] - fv[0] <= o.f_tolerance * (1.0 + std::abs(fv[0]))) {
      converged = true;
      break;
    }
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) c[k] += pts[i][k] / dn;
    const auto& worst = pts[n];
    for (std::size_t k = 0; k < n; ++k) xr[k] = c[k] + rho * (c[k] - worst[k]);
    const double fr = eval(xr);
    if (fr < fv[0]) {
      for (std::size_t k = 0; k < n; ++k) xe[k] = c[k] + chi * (xr[k] - c[k]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[n] = xe;
        fv[n] = fe;
      } else {
        pts[n] = xr;
        fv[n] = fr;
      }
      continue;
    }
    if (fr < fv[n - 1]) {
      pts[n] = xr;
      fv[n] = fr;
      continue;
    }
    if (fr < fv[n]) {
      for (std::size_t k = 0; k < n; ++k) xc[k] = c[k] + gamma * (xr[k] - c[k]);
      const double fc = eval(xc);
      if (fc <= fr) {
        pts[n] = xc;
        fv[n] = fc;
        continue;
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) xc[k] = c[k] + gamma * (worst[k] - c[k]);
      const double fc = eval(xc);
      if (fc < fv[n]) {
        pts[n] = xc;
        fv[n] = fc;
        continue;
      }
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[0][k] + sigma * (pts[i][k] - pts[0][k]);
      fv[i] = eval(pts[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {pts[best], fv[best], evals, converged};
}

}  // namespace detail

/// Nelder-Mead simplex search from x0, followed by polish runs restarted at
/// the incumbent with a shrinking initial simplex.
template <typename F>
Minimum nelder_mead(F&& f, std::vector<double> x0, const NelderMeadOptions& o = {}) {
  if (x0.empty()) throw DomainError("nelder_mead: empty parameter vector");
  Minimum best = detail::nelder_mead_run(f, x0, o.initial_step, o.max_evaluations, o);
  double step = o.initial_step;
  for (int r = 0; r < o.polish_restarts && best.evaluations < o.max_evaluations; ++r) {
    step *= 0.1;
    Minimum next = detail::nelder_mead_run(f, best.x, step, o.max_evaluations - best.evaluations, o);
    const int total = best.evaluations + next.evaluations;
    const bool improved = next.f < best.f - o.f_tolerance * (1.0 + std::abs(best.f));
    if (next.f <= best.f) {
      best.x = std::move(next.x);
      best.f = next.f;
    }
    best.converged = next.converged;
    best.evaluations = total;
    if (!improved) break;
  }
  return best;
}

/// Additive-recurrence (R_d) low-discrepancy sequence in [0,1)^dim with a
/// seed-derived random shift.
class LowDiscrepancy {
 public:
  LowDiscrepancy(std::size_t dim, std::uint64_t seed) : alpha_(dim), shift_(dim) {
    double g = 2.0;
    for (int it = 0; it < 64; ++it) {
      const double p = std::pow(g, static_cast<double>(dim + 1));
      g -= (p - g - 1.0) / ((dim + 1) * p / g - 1.0);
    }
    double a = 1.0;
    for (std::size_t j = 0; j < dim; ++j) alpha_[j] = std::fmod(a /= g, 1.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : shift_) s = u(rng);
  }

  std::vector<double> point(std::size_t index) const {
    std::vector<double> x(alpha_.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double v = shift_[j] + static_cast<double>(index + 1) * alpha_[j];
      x[j] = v - std::floor(v);
    }
    return x;
  }

 private:
  std::vector<double> alpha_;
  std::vector<double> shift_;
};

/// Runs task(i) for i in [0, n) across hardware threads. Each index is owned by
/// exactly one worker, so results written by index are deterministic.
template <typename Task>
void parallel_for(std::size_t n, Task&& task) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct OptimizerConfig {
  int restarts = 32;
  /// Objective evaluations per local search.
  int max_iterations = 4000;
  double simplex_tolerance = 1e-10;
  double penalty_weight = 1e4;
  double constraint_tolerance = 1e-6;
  std::uint64_t seed = 0;

  void validate() const {
    if (restarts < 1) throw DomainError("OptimizerConfig: restarts must be >= 1");
    if (max_iterations < 1) throw DomainError("OptimizerConfig: max_iterations must be >= 1");
    if (!(simplex_tolerance > 0.0 && penalty_weight > 0.0 && constraint_tolerance > 0.0)) {
      throw DomainError("OptimizerConfig: tolerances and penalty weight must be positive");
    }
  }
};

inline constexpr int kPenaltyStages = 3;

namespace detail {

struct NoSurrogate {};

}  // namespace detail

/// Unconstrained multi-start minimization of f over starts drawn from the
/// low-discrepancy sequence in [lo, hi]^dim. When a surrogate is supplied, each
/// restart minimizes it first and then refines on f from the surrogate optimum.
/// The result is the minimum final f, ties broken by lexicographic parameters.
template <typename F, typename Surrogate = detail::NoSurrogate>
Minimum multistart_minimize(F&& f, std::size_t dim, double lo, double hi, double step,
                            const OptimizerConfig& cfg, Surrogate&& surrogate = {}) {
  cfg.validate();
  const LowDiscrepancy seq(dim, cfg.seed);
  std::vector<Minimum> runs(static_cast<std::size_t>(cfg.restarts));
  parallel_for(runs.size(), [&](std::size_t r) {
    std::vector<double> x = seq.point(r);
    for (auto& v : x) v = lo + (hi - lo) * v;
    NelderMeadOptions o;
    o.max_evaluations = cfg.max_iterations;
    o.x_tolerance = cfg.simplex_tolerance;
    o.initial_step = step;
    if constexpr (!std::is_same_v<std::decay_t<Surrogate>, detail::NoSurrogate>) {
      x = nelder_mead(surrogate, x, o).x;
      o.initial_step = 0.25 * step;
    }
    runs[r] = nelder_mead(f, x, o);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].f < runs[best].f || (runs[r].f == runs[best].f && runs[r].x < runs[best].x)) best = r;
  }
  return runs[best];
}

struct NumericCurvePoint {
  double d_target = 0.0;
  double d_achieved = 0.0;
  double pe = 0.0;
  std::vector<double> params;
  bool converged = false;
};

namespace detail {

struct Measured {
  double pe;
  double d;
};

// Minimizes pe subject to d == target with a quadratic penalty on the scaled
// residual (d - target) / target, escalating the weight x10 per stage. Starts
// come from the low-discrepancy sequence mapped to [lo, hi]^dim. `measure`
// returns nullopt for parameter vectors outside the model (treated as +inf).
template <typename Measure>
NumericCurvePoint constrained_search(Measure&& measure, std::size_t dim, double lo, double hi,
                                     double step, double target, const OptimizerConfig& cfg) {
  const LowDiscrepancy seq(dim, cfg.seed);
  const double scale = std::max(target, 1e-300);
  std::vector<NumericCurvePoint> results(static_cast<std::size_t>(cfg.restarts));
  std::vector<double> final_objective(results.size());

  parallel_for(results.size(), [&](std::size_t r) {
    std::vector<double> x = seq.point(r);
    for (auto& v : x) v = lo + (hi - lo) * v;
    Minimum m;
    double w = cfg.penalty_weight;
    for (int stage = 0; stage < kPenaltyStages; ++stage, w *= 10.0) {
      auto objective = [&](std::span<const double> p) {
        const std::optional<Measured> v = measure(p);
        if (!v) return std::numeric_limits<double>::infinity();
        const double resid = (v->d - target) / scale;
        return v->pe + w * resid * resid;
      };
      NelderMeadOptions o;
      o.max_evaluations = cfg.max_iterations;
      o.x_tolerance = cfg.simplex_tolerance;
      o.initial_step = stage == 0 ? step : step * 0.1;
      m = nelder_mead(objective, x, o);
      x = m.x;
    }
    const std::optional<Measured> v = measure(x);
    NumericCurvePoint pt;
    pt.d_target = target;
    pt.params = x;
    if (v) {
      pt.d_achieved = v->d;
      pt.pe = v->pe;
      pt.converged = m.converged && std::abs(v->d - target) < cfg.constraint_tolerance;
    } else {
      pt.d_achieved = std::numeric_limits<double>::quiet_NaN();
      pt.pe = std::numeric_limits<double>::quiet_NaN();
    }
    results[r] = std::move(pt);
    final_objective[r] = m.f;
  });

  // Deterministic reduction: converged points by (pe, params); otherwise by
  // final penalized objective.
  std::optional<std::size_t> best;
  for (std::size_t r = 0; r < results.size(); ++r) {
    if (!results[r].converged) continue;
    if (!best || results[r].pe < results[*best].pe ||
        (results[r].pe == results[*best].pe && results[r].params < results[*best].params)) {
      best = r;
    }
  }
  if (!best) {
    best = static_cast<std::size_t>(
        std::min_element(final_objective.begin(), final_objective.end()) - final_objective.begin());
  }
  return results[*best];
}

inline void require_curve_target(const PurePair& pair, double d, const char* where) {
  if (!pair.nondegenerate()) {
    throw DomainError(std::string(where) + ": degenerate pair (alpha = " +
                      std::to_string(pair.alpha()) + ")");
  }
  const double d0 = d_zero(pair.s_overlap());
  if (!(d > 0.0 && d <= d0 + 1e-12)) {
    throw DomainError(std::string(where) + ": target disturbance " + std::to_string(d) +
                      " outside (0, " + std::to_string(d0) + "]");
  }
}

}  // namespace detail

/// For each target d, the minimum of pe_closed over (lambda, theta, phi) with
/// disturbance_closed == d. params = {lambda, theta, phi}.
inline std::vector<NumericCurvePoint> numeric_curve_family(const PurePair& pair,
                                                           std::span<const double> d_grid,
                                                           const OptimizerConfig& cfg) {
  cfg.validate();
  for (double d : d_grid) detail::require_curve_target(pair, d, "numeric_curve_family");
  auto measure = [&](std::span<const double> x) -> std::optional<detail::Measured> {
    const ProbeParams p{x[0], x[1], x[2]};
    return detail::Measured{pe_closed(pair, p), disturbance_closed(pair, p)};
  };
  const double half_pi = 0.5 * std::numbers::pi;
  std::vector<NumericCurvePoint> out;
  for (double d : d_grid) {
    out.push_back(detail::constrained_search(measure, 3, -half_pi, half_pi, 0.2, d, cfg));
  }
  return out;
}

struct ProbeStates {
  std::array<DensityOperator, 2> alice;
  std::array<DensityOperator, 2> eve;
};

/// States left to Alice and Eve by a general probe of dimension probe_dim.
/// The interaction is an isometry |a_m>|psi> -> |v_m> into C^2 (x) C^probe_dim;
/// x holds 8*probe_dim reals (re, im interleaved; column m at offset
/// 4*probe_dim*m), orthonormalized by Gram-Schmidt. Empty for degenerate x.
inline std::optional<ProbeStates> general_probe_states(const PurePair& pair, std::size_t probe_dim,
                                                       std::span<const double> x) {
  const std::size_t n = 2 * probe_dim;
  if (x.size() != 4 * n) throw DimensionError("general_probe_states: expected 8*probe_dim reals");
  CMatrix raw(n, 2);
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t k = 0; k < n; ++k) raw(k, m) = cplx(x[m * 2 * n + 2 * k], x[m * 2 * n + 2 * k + 1]);
  const auto q = orthonormalize_columns(raw, 1e-8);
  if (!q) return std::nullopt;
  auto states = [&](int s) {
    CVector psi(n);
    for (std::size_t k = 0; k < n; ++k)
      psi[k] = pair.coefficient(s, 0) * (*q)(k, 0) + pair.coefficient(s, 1) * (*q)(k, 1);
    const CMatrix joint = CMatrix::projector(psi);
    return std::pair{DensityOperator(hermitian_part(partial_trace(joint, 2, probe_dim, Keep::A))),
                     DensityOperator(hermitian_part(partial_trace(joint, 2, probe_dim, Keep::E)))};
  };
  auto [a0, e0] = states(0);
  auto [a1, e1] = states(1);
  return ProbeStates{{std::move(a0), std::move(a1)}, {std::move(e0), std::move(e1)}};
}

struct GeneralSearchResult {
  std::vector<NumericCurvePoint> points;
  /// max over returned points of pe_opt(min(d_achieved, d0)) - pe; positive
  /// values beat the analytic curve.
  double max_improvement = -std::numeric_limits<double>::infinity();
  bool beats_analytic = false;
};

/// Same constrained search over general isometric probes of dimension
/// probe_dim in {2, 3, 4}, scoring with helstrom and disturbance_avg_fidelity.
inline GeneralSearchResult numeric_curve_general(const PurePair& pair, int probe_dim,
                                                 std::span<const double> d_grid,
                                                 const OptimizerConfig& cfg,
                                                 double tolerance = 1e-3) {
  cfg.validate();
  if (probe_dim < 2 || probe_dim > 4) {
    throw DomainError("numeric_curve_general: probe_dim must be 2, 3 or 4");
  }
  for (double d : d_grid) detail::require_curve_target(pair, d, "numeric_curve_general");
  const auto pd = static_cast<std::size_t>(probe_dim);
  const DensityOperator rho0 = pair.density(0);
  const DensityOperator rho1 = pair.density(1);
  auto measure = [&](std::span<const double> x) -> std::optional<detail::Measured> {
    const auto st = general_probe_states(pair, pd, x);
    if (!st) return std::nullopt;
    return detail::Measured{
        helstrom_error(PriorPair::equal(), st->eve[0], st->eve[1]),
        disturbance_avg_fidelity(rho0, rho1, st->alice[0], st->alice[1])};
  };
  GeneralSearchResult res;
  const double d0 = d_zero(pair.s_overlap());
  for (double d : d_grid) {
    auto pt = detail::constrained_search(measure, 8 * pd, -1.0, 1.0, 0.3, d, cfg);
    if (std::isfinite(pt.pe) && std::isfinite(pt.d_achieved)) {
      const double bound = pe_opt(std::clamp(pt.d_achieved, 0.0, d0), pair);
      res.max_improvement = std::max(res.max_improvement, bound - pt.pe);
    }
    res.points.push_back(std::move(pt));
  }
  res.beats_analytic = res.max_improvement > tolerance;
  return res;
}

struct StationarityResiduals {
  double r1;  // D_lambda G_phi - D_phi G_lambda
  double r2;  // D_theta G_phi - D_phi G_theta
};

/// Residuals of the Lagrange stationarity conditions for maximizing G at fixed
/// D, with partial derivatives by central differences (step 1e-5) on the closed forms.
inline StationarityResiduals stationarity_residuals(const PurePair& pair, const ProbeParams& p) {
  constexpr double h = 1e-5;
  auto partial = [&](auto&& fn, int which) {
    ProbeParams a = p;
    ProbeParams b = p;
    double* pa = which == 0 ? &a.lambda : which == 1 ? &a.theta : &a.phi;
    double* pb = which == 0 ? &b.lambda : which == 1 ? &b.theta : &b.phi;
    *pa += h;
    *pb -= h;
    return (fn(a) - fn(b)) / (2.0 * h);
  };
  auto g = [](const ProbeParams& q) { return g_closed(q); };
  auto d = [&](const ProbeParams& q) { return disturbance_closed(pair, q); };
  const double gl = partial(g, 0), gt = partial(g, 1), gf = partial(g, 2);
  const double dl = partial(d, 0), dt = partial(d, 1), df = partial(d, 2);
  return {dl * gf - df * gl, dt * gf - df * gt};
}

struct ScalarBoundResult {
  double value;
  ProbeParams params;
  bool converged;
};

/// min over the probe family of combiner(pe_closed, disturbance_closed).
inline ScalarBoundResult scalar_bound(const PurePair& pair,
                                      const std::function<double(double pe, double d)>& combiner,
                                      const OptimizerConfig& cfg) {
  const double half_pi = 0.5 * std::numbers::pi;
  auto objective = [&](std::span<const double> q) {
    const ProbeParams p{q[0], q[1], q[2]};
    return combiner(pe_closed(pair, p), disturbance_closed(pair, p));
  };
  const Minimum m = multistart_minimize(objective, 3, -half_pi, half_pi, 0.2, cfg);
  return {m.f, ProbeParams{m.x[0], m.x[1], m.x[2]}, m.converged};
}

}  // namespace infodist

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

// Seeded invariant suites, one per module. Every check reports the worst
// observed value of a residual and passes iff that value is at most the
// check's tolerance.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "infodist/broadcast.hpp"
#include "infodist/eavesdrop.hpp"
#include "infodist/linalg.hpp"
#include "infodist/measures.hpp"
#include "infodist/optimize.hpp"
#include "infodist/quantum.hpp"
#include "infodist/random.hpp"
#include "infodist/tradeoff.hpp"

namespace infodist::verify {

struct Check {
  std::string name;
  double tolerance;
  double worst;
  int samples;
  bool pass;
};

struct Options {
  std::uint64_t seed = 0;
  /// Perturbs the closed-form Helstrom expression (fault injection).
  bool mutate_closed_form = false;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"linalg",  "quantum",  "measures", "eavesdrop",
                                              "tradeoff", "optimize", "broadcast"};
  return names;
}

namespace detail {

class Tracker {
 public:
  Tracker(std::string name, double tolerance) : name_(std::move(name)), tol_(tolerance) {}
  void observe(double residual) {
    ++samples_;
    if (std::isnan(residual)) {
      nan_ = true;
    } else {
      worst_ = std::max(worst_, residual);
    }
  }
  Check done() const {
    const double w = nan_ ? std::numeric_limits<double>::quiet_NaN() : worst_;
    return {name_, tol_, w, samples_, !nan_ && samples_ > 0 && worst_ <= tol_};
  }

 private:
  std::string name_;
  double tol_;
  double worst_ = -std::numeric_limits<double>::infinity();
  int samples_ = 0;
  bool nan_ = false;
};

// Seeds differ per suite so that suites are independent of run order.
inline random::Rng suite_rng(std::uint64_t seed, std::uint64_t salt) {
  return random::Rng(seed * 0x9E3779B97F4A7C15ULL + salt);
}

inline std::size_t small_dim(random::Rng& rng, std::size_t lo = 2, std::size_t hi = 4) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

}  // namespace detail

inline std::vector<Check> linalg_suite(const Options& opt) {
  auto rng = detail::suite_rng(opt.seed, 1);
  detail::Tracker recon("linalg.herm_eig_reconstruction", 1e-10);
  detail::Tracker ortho("linalg.herm_eig_orthonormality", 1e-10);
  detail::Tracker tnorm("linalg.trace_norm_bounds_trace", 1e-12);
  detail::Tracker ptrace("linalg.partial_trace_of_product", 1e-12);
  detail::Tracker sqrt_cov("linalg.psd_sqrt_unitary_covariance", 1e-9);
  detail::Tracker abs_cov("linalg.op_abs_unitary_covariance", 1e-9);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = detail::small_dim(rng);
    const CMatrix m = random::hermitian(n, rng);
    const auto e = herm_eig(m);
    recon.observe(max_abs_diff(e.reconstruct(), m));
    ortho.observe(unitarity_error(e.vectors));
    tnorm.observe(std::abs(m.trace()) - trace_norm(m));

    const std::size_t k = detail::small_dim(rng);
    const CMatrix a = random::ginibre(n, n, rng);
    const CMatrix b = random::ginibre(k, k, rng);
    const CMatrix ab = tensor_product(a, b);
    ptrace.observe(max_abs_diff(partial_trace(ab, n, k, Keep::A), b.trace() * a));
    ptrace.observe(max_abs_diff(partial_trace(ab, n, k, Keep::E), a.trace() * b));

    const CMatrix u = random::unitary(n, rng);
    const CMatrix p = random::density(n, rng).matrix();
    sqrt_cov.observe(max_abs_diff(psd_sqrt(hermitian_part(u * p * u.adjoint())), u * psd_sqrt(p) * u.adjoint()));
    abs_cov.observe(max_abs_diff(op_abs(hermitian_part(u * m * u.adjoint())), u * op_abs(m) * u.adjoint()));
  }
  return {recon.done(), ortho.done(), tnorm.done(), ptrace.done(), sqrt_cov.done(), abs_cov.done()};
}

inline std::vector<Check> quantum_suite(const Options& opt) {
  auto rng = detail::suite_rng(opt.seed, 2);
  detail::Tracker routes("quantum.channel_matches_joint_evolution", 1e-10);
  detail::Tracker probs("quantum.povm_probabilities_normalized", 1e-10);
  detail::Tracker purity("quantum.unitary_preserves_purity", 1e-10);
  for (int i = 0; i < 50; ++i) {
    const std::size_t da = detail::small_dim(rng, 2, 3);
    const std::size_t de = detail::small_dim(rng, 2, 3);
    const CMatrix u = random::unitary(da * de, rng);
    const DensityOperator probe = random::density(de, rng, detail::small_dim(rng, 1, de));
    const DensityOperator rho = random::density(da, rng);
    const DensityOperator via_kraus = apply_channel(channel_from_unitary(u, probe), rho);
    routes.observe(max_abs_diff(via_kraus.matrix(), partial_trace(joint_evolution(u, rho, probe), da, de, Keep::A)));

    const Povm povm = random::povm(da, detail::small_dim(rng, 2, 4), rng);
    double total = 0.0, lowest = 0.0;
    for (std::size_t b = 0; b < povm.size(); ++b) {
      const double p = (rho.matrix() * povm[b]).trace().real();
      total += p;
      lowest = std::min(lowest, p);
    }
    probs.observe(std::max(std::abs(total - 1.0), -lowest));

    const CMatrix w = random::unitary(da, rng);
    purity.observe(std::abs(apply_channel(KrausChannel({w}), rho).purity() - rho.purity()));
  }
  return {routes.done(), probs.done(), purity.done()};
}

namespace detail {

// Error of the projective qubit measurement along n, best of both assignments.
inline double projective_error(const PriorPair& pr, const DensityOperator& r0, const DensityOperator& r1,
                               double theta, double phi) {
  const cplx x = std::sin(theta) * std::cos(phi), y = std::sin(theta) * std::sin(phi);
  const double z = std::cos(theta);
  const CMatrix p{{0.5 * (1.0 + z), 0.5 * (x - cplx(0, 1) * y)}, {0.5 * (x + cplx(0, 1) * y), 0.5 * (1.0 - z)}};
  const double p0 = (r0.matrix() * p).trace().real();
  const double p1 = (r1.matrix() * p).trace().real();
  const double guess0_on_p = pr.pi0() * (1.0 - p0) + pr.pi1() * p1;
  const double guess1_on_p = pr.pi0() * p0 + pr.pi1() * (1.0 - p1);
  return std::min(guess0_on_p, guess1_on_p);
}

}  // namespace detail

/// Minimum error over 720 projective qubit measurements (24 polar x 30 azimuthal
/// directions) and the two constant guesses.
inline double brute_force_qubit_error(const PriorPair& pr, const DensityOperator& r0, const DensityOperator& r1) {
  double best = std::min(pr.pi0(), pr.pi1());
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 30; ++j)
      best = std::min(best, detail::projective_error(pr, r0, r1, (i + 0.5) * std::numbers::pi / 24.0,
                                                     2.0 * std::numbers::pi * j / 30.0));
  return best;
}

inline std::vector<Check> measures_suite(const Options& opt) {
  auto rng = detail::suite_rng(opt.seed, 3);
  detail::Tracker ov("measures.overlap_classical_bounds_min_overlap", 1e-10);
  detail::Tracker er("measures.error_classical_bounds_helstrom", 1e-10);
  detail::Tracker mi("measures.mutual_information_bounded_by_holevo", 1e-10);
  detail::Tracker sym("measures.min_overlap_symmetric", 1e-9);
  detail::Tracker half("measures.error_plus_kolmogorov_is_half", 1e-12);
  detail::Tracker brute("measures.helstrom_beats_brute_force", 1e-6);
  detail::Tracker attain("measures.helstrom_povm_attains_bound", 1e-10);
  std::uniform_real_distribution<double> u01(0.05, 0.95);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = detail::small_dim(rng, 2, 3);
    const DensityOperator r0 = random::density(d, rng, detail::small_dim(rng, 1, d));
    const DensityOperator r1 = random::density(d, rng, detail::small_dim(rng, 1, d));
    const double pi0 = u01(rng);
    const PriorPair pr(pi0, 1.0 - pi0);
    const Povm povm = random::povm(d, detail::small_dim(rng, 2, 4), rng);
    const auto p0 = povm_probabilities(r0, povm);
    const auto p1 = povm_probabilities(r1, povm);
    const auto h = helstrom(pr, r0, r1);
    ov.observe(min_overlap(r0, r1) - overlap_classical(p0, p1));
    er.observe(h.error_probability - error_prob_classical(pr, p0, p1));
    mi.observe(mutual_information(pr, p0, p1) - holevo_bound(pr, r0, r1));
    sym.observe(std::abs(min_overlap(r0, r1) - min_overlap(r1, r0)));
    const PriorPair eq = PriorPair::equal();
    half.observe(std::abs(error_prob_classical(eq, p0, p1) + kolmogorov_distance(eq, p0, p1) - 0.5));
    const auto q0 = povm_probabilities(r0, h.optimal_povm);
    const auto q1 = povm_probabilities(r1, h.optimal_povm);
    attain.observe(std::abs(pr.pi0() * q0[1] + pr.pi1() * q1[0] - h.error_probability));
    if (d == 2) brute.observe(h.error_probability - brute_force_qubit_error(pr, r0, r1));
  }
  return {ov.done(), er.done(), mi.done(), sym.done(), half.done(), brute.done(), attain.done()};
}

inline std::vector<Check> eavesdrop_suite(const Options& opt) {
  auto rng = detail::suite_rng(opt.seed, 4);
  detail::Tracker ident("eavesdrop.identity_interaction_no_disturbance", 1e-10);
  detail::Tracker purif("eavesdrop.entanglement_fidelity_purification_independent", 1e-9);
  detail::Tracker bound("eavesdrop.entanglement_fidelity_bounded_by_fidelity", 1e-10);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = detail::small_dim(rng, 2, 3);
    const DensityOperator r0 = random::density(d, rng);
    const DensityOperator r1 = random::density(d, rng, 1);
    const KrausChannel id = KrausChannel::identity(d);
    // disturbance_guessing sits at its chance level 1/2 when nothing changes.
    ident.observe(std::max({disturbance_avg_fidelity(r0, r1, r0, r1), disturbance_entanglement(r0, r1, id),
                            1.0 - entanglement_fidelity(r0, id), disturbance_guessing(r0, r1, r0, r1) - 0.5}));

    const KrausChannel ch = random::channel(d, detail::small_dim(rng, 1, 4), rng);
    const double fs = entanglement_fidelity(r0, ch);
    purif.observe(std::abs(fs - purified_entanglement_fidelity(r0, ch, CMatrix::identity(d))));
    purif.observe(std::abs(fs - purified_entanglement_fidelity(r0, ch, random::unitary(d, rng))));
    bound.observe(fs - fidelity(r0, apply_channel(ch, r0)));
  }
  return {ident.done(), purif.done(), bound.done()};
}

/// Parameter grid with n_l x n_t x n_f points over [-pi/2, pi/2]^3 (endpoints
/// included) and n_a values of alpha strictly inside (0, pi/4).
struct TradeoffGrid {
  int n_l = 10, n_t = 10, n_f = 10, n_a = 5;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    const double h = 0.5 * std::numbers::pi;
    auto at = [&](int i, int n) { return -h + 2.0 * h * i / (n - 1); };
    for (int a = 0; a < n_a; ++a) {
      const PurePair pair(0.25 * std::numbers::pi * (a + 1) / (n_a + 1));
      for (int i = 0; i < n_l; ++i)
        for (int j = 0; j < n_t; ++j)
          for (int k = 0; k < n_f; ++k) fn(pair, ProbeParams{at(i, n_l), at(j, n_t), at(k, n_f)});
    }
  }
};

inline std::vector<Check> tradeoff_suite(const Options& opt) {
  const double coeff = opt.mutate_closed_form ? 0.45 : 0.5;
  detail::Tracker equiv("tradeoff.closed_form_direct_equivalence", 1e-9);
  detail::Tracker elems("tradeoff.closed_form_matrix_elements", 1e-10);
  detail::Tracker noinfo("tradeoff.no_information_without_disturbance", 1e-6);
  detail::Tracker unit("tradeoff.probe_unitarity_identities", 1e-12);
  detail::Tracker mono("tradeoff.analytic_curve_nonincreasing", 1e-9);
  TradeoffGrid{}.for_each([&](const PurePair& pair, const ProbeParams& p) {
    const std::array<DensityOperator, 2> eve{eve_state_direct(pair, p, 0), eve_state_direct(pair, p, 1)};
    const std::array<DensityOperator, 2> alice{alice_state_direct(pair, p, 0), alice_state_direct(pair, p, 1)};
    const double pe = infodist::detail::pe_closed_with(pair, p, coeff);
    const double d = disturbance_closed(pair, p);
    equiv.observe(std::abs(pe - helstrom_error(PriorPair::equal(), eve[0], eve[1])));
    equiv.observe(std::abs(d - disturbance_avg_fidelity(pair.density(0), pair.density(1), alice[0], alice[1])));
    for (int s = 0; s < 2; ++s) {
      elems.observe(max_abs_diff(eve_state_closed(pair, p, s), eve[s].matrix()));
      elems.observe(max_abs_diff(alice_state_closed(pair, p, s), alice[s].matrix()));
    }
    if (d < 1e-9) noinfo.observe(0.5 - pe);
    const auto x = p.x();
    unit.observe(std::abs(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + x[4] * x[4] - 1.0));
    unit.observe(std::abs(x[0] * x[4] + x[1] * x[3]));
  });
  for (double alpha : {std::numbers::pi / 12, std::numbers::pi / 8, std::numbers::pi / 6}) {
    const auto curve = analytic_curve(PurePair(alpha), 101);
    for (std::size_t i = 1; i < curve.points.size(); ++i) mono.observe(curve.points[i].pe - curve.points[i - 1].pe);
  }
  return {equiv.done(), elems.done(), noinfo.done(), unit.done(), mono.done()};
}

inline std::vector<Check> optimize_suite(const Options& opt) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.seed = opt.seed;
  const PurePair pair(std::numbers::pi / 8);
  const double d0 = d_zero(pair.s_overlap());
  const std::vector<double> grid{0.3 * d0, 0.7 * d0};
  const auto first = numeric_curve_family(pair, grid, cfg);
  const auto second = numeric_curve_family(pair, grid, cfg);
  detail::Tracker repro("optimize.bit_reproducible", 0.0);
  detail::Tracker envelope("optimize.family_above_analytic_curve", 1e-3);
  detail::Tracker consistent("optimize.disturbance_self_consistent", 1e-9);
  detail::Tracker converged("optimize.family_converged", 0.0);
  detail::Tracker stationary("optimize.stationary_at_optimum", 1e-5);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& a = first[i];
    const auto& b = second[i];
    repro.observe(a.pe == b.pe && a.d_achieved == b.d_achieved && a.params == b.params ? 0.0 : 1.0);
    converged.observe(a.converged ? 0.0 : 1.0);
    if (!a.converged) continue;
    const ProbeParams p{a.params[0], a.params[1], a.params[2]};
    envelope.observe(pe_opt(std::min(a.d_achieved, d0), pair) - a.pe);
    consistent.observe(std::abs(disturbance_closed(pair, p) - a.d_achieved));
    const auto r = stationarity_residuals(pair, p);
    stationary.observe(std::max(std::abs(r.r1), std::abs(r.r2)));
  }
  return {repro.done(), envelope.done(), consistent.done(), converged.done(), stationary.done()};
}

inline std::vector<Check> broadcast_suite(const Options& opt) {
  auto rng = detail::suite_rng(opt.seed, 7);
  detail::Tracker exact("broadcast.commuting_pairs_broadcast_exactly", 1e-9);
  for (int i = 0; i < 20; ++i) {
    const CMatrix u = random::unitary(detail::small_dim(rng, 2, 3), rng);
    const auto att = broadcast_commuting(random::diagonal_in(u, rng), random::diagonal_in(u, rng));
    exact.observe(*std::max_element(att.marginal_errors.begin(), att.marginal_errors.end()));
  }
  detail::Tracker fixed("broadcast.block_states_fixed_by_dephasing", 1e-12);
  detail::Tracker info("broadcast.block_information_gain", 1e-9);
  const auto blocks = default_block_pair();
  const auto res = block_counterexample(blocks, PriorPair::equal());
  fixed.observe(res.disturbance);
  info.observe(std::abs(res.info - (1.0 - binary_entropy(0.9))));
  info.observe(res.is_example ? 0.0 : 1.0);

  // Evidence only: the search must not find a near-perfect broadcaster for
  // the noncommuting designated pair.
  detail::Tracker evidence("broadcast.noncommuting_search_score", 1.0 - 1e-6);
  const auto [rho0, rho1] = designated_noncommuting_pair();
  for (std::uint64_t k = 0; k < 2; ++k) {
    OptimizerConfig cfg;
    cfg.restarts = 4;
    cfg.seed = opt.seed + k;
    evidence.observe(search_broadcaster(rho0, rho1, 2, cfg).score);
  }
  return {exact.done(), fixed.done(), info.done(), evidence.done()};
}

/// Runs the named suite ("all" runs every suite in order).
inline std::vector<Check> run_suite(std::string_view name, const Options& opt) {
  if (name == "all") {
    std::vector<Check> all;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, opt);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (name == "linalg") return linalg_suite(opt);
  if (name == "quantum") return quantum_suite(opt);
  if (name == "measures") return measures_suite(opt);
  if (name == "eavesdrop") return eavesdrop_suite(opt);
  if (name == "tradeoff") return tradeoff_suite(opt);
  if (name == "optimize") return optimize_suite(opt);
  if (name == "broadcast") return broadcast_suite(opt);
  throw DomainError("verify: unknown suite '" + std::string(name) + "'");
}

}  // namespace infodist::verify

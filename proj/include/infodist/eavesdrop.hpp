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

// Black-box eavesdropping model: Alice's system A interacts unitarily with a
// probe E; Alice keeps tr_E of the joint state, Eve keeps tr_A. Disturbance
// measures compare Alice's outputs with her inputs.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "infodist/error.hpp"
#include "infodist/linalg.hpp"
#include "infodist/measures.hpp"
#include "infodist/quantum.hpp"

namespace infodist {

struct InteractionOutcome {
  std::array<DensityOperator, 2> joint;
  std::array<DensityOperator, 2> alice;
  std::array<DensityOperator, 2> eve;
  KrausChannel channel;  // reduced map A -> A
};

inline InteractionOutcome run_interaction(const DensityOperator& rho0, const DensityOperator& rho1,
                                          const DensityOperator& probe, const CMatrix& u) {
  if (rho0.dim() != rho1.dim()) throw DimensionError("run_interaction: input dims differ");
  const std::size_t da = rho0.dim();
  const std::size_t de = probe.dim();
  if (!u.is_square() || u.rows() != da * de) {
    throw DimensionError("run_interaction: interaction " + u.shape() + " does not act on " +
                         std::to_string(da) + "x" + std::to_string(de));
  }
  KrausChannel channel = channel_from_unitary(u, probe);

  auto evolve = [&](const DensityOperator& rho) {
    return DensityOperator(hermitian_part(joint_evolution(u, rho, probe)));
  };
  std::array<DensityOperator, 2> joint{evolve(rho0), evolve(rho1)};
  auto reduce = [&](int s, Keep k) {
    return DensityOperator(partial_trace(joint[s].matrix(), da, de, k));
  };
  std::array<DensityOperator, 2> alice{reduce(0, Keep::A), reduce(1, Keep::A)};
  std::array<DensityOperator, 2> eve{reduce(0, Keep::E), reduce(1, Keep::E)};

  const std::array<const DensityOperator*, 2> inputs{&rho0, &rho1};
  for (int s = 0; s < 2; ++s) {
    const double err = max_abs_diff(apply_channel(channel, *inputs[s]).matrix(), alice[s].matrix());
    if (!(err < 1e-10)) {
      throw InvariantError("run_interaction: Kraus route and joint-evolution route disagree by " +
                           std::to_string(err));
    }
  }
  return {std::move(joint), std::move(alice), std::move(eve), std::move(channel)};
}

namespace detail {
inline void require_dims(std::initializer_list<const DensityOperator*> states, const char* where) {
  const std::size_t d = (*states.begin())->dim();
  for (const auto* s : states)
    if (s->dim() != d) throw DimensionError(std::string(where) + ": state dimensions differ");
}
}  // namespace detail

/// One minus the average input/output fidelity.
inline double disturbance_avg_fidelity(const DensityOperator& rho0, const DensityOperator& rho1,
                                       const DensityOperator& alice0,
                                       const DensityOperator& alice1) {
  detail::require_dims({&rho0, &rho1, &alice0, &alice1}, "disturbance_avg_fidelity");
  const double d = 1.0 - 0.5 * fidelity(rho0, alice0) - 0.5 * fidelity(rho1, alice1);
  return std::clamp(d, 0.0, 1.0);
}

/// Probability that Alice catches an active Eve when she must guess whether
/// the box was active, 1/2 + 1/8 tr|rho0 - rho0'| + 1/8 tr|rho1 - rho1'|.
inline double disturbance_guessing(const DensityOperator& rho0, const DensityOperator& rho1,
                                   const DensityOperator& alice0, const DensityOperator& alice1) {
  detail::require_dims({&rho0, &rho1, &alice0, &alice1}, "disturbance_guessing");
  const double d = 0.5 + 0.125 * trace_norm(rho0.matrix() - alice0.matrix()) +
                   0.125 * trace_norm(rho1.matrix() - alice1.matrix());
  return std::clamp(d, 0.5, 1.0);
}

/// Entanglement fidelity sum_l |tr(rho A_l)|^2.
inline double entanglement_fidelity(const DensityOperator& rho, const KrausChannel& ch) {
  if (ch.dim_in() != rho.dim() || ch.dim_out() != rho.dim()) {
    throw DimensionError("entanglement_fidelity: channel " + std::to_string(ch.dim_in()) + "->" +
                         std::to_string(ch.dim_out()) + " vs state dim " +
                         std::to_string(rho.dim()));
  }
  double f = 0.0;
  for (const auto& a : ch.operators()) f += std::norm((rho.matrix() * a).trace());
  return std::clamp(f, 0.0, 1.0);
}

/// <psi|(E (x) I)(|psi><psi|)|psi> for the purification
/// |psi> = sum_i sqrt(l_i) |v_i>|W e_i> of rho, with W a unitary on the
/// reference system. Independent of the Kraus-trace formula above.
inline double purified_entanglement_fidelity(const DensityOperator& rho, const KrausChannel& ch,
                                             const CMatrix& reference_rotation) {
  const std::size_t d = rho.dim();
  if (reference_rotation.rows() != d || reference_rotation.cols() != d) {
    throw DimensionError("purified_entanglement_fidelity: reference rotation must be dim-square");
  }
  const auto eig = herm_eig(rho.matrix());
  CVector psi(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const double w = std::sqrt(std::max(eig.values[i], 0.0));
    if (w == 0.0) continue;
    const CVector ref = reference_rotation.column(i);
    const CVector term = tensor_product(eig.vectors.column(i), ref);
    for (std::size_t k = 0; k < psi.size(); ++k) psi[k] += w * term[k];
  }
  const CMatrix pure = CMatrix::projector(psi);
  const CMatrix id = CMatrix::identity(d);
  CMatrix out(d * d, d * d);
  for (const auto& a : ch.operators()) {
    const CMatrix big = tensor_product(a, id);
    out += big * pure * big.adjoint();
  }
  return expectation(out, psi).real();
}

/// One minus the average entanglement fidelity of the two inputs.
inline double disturbance_entanglement(const DensityOperator& rho0, const DensityOperator& rho1,
                                       const KrausChannel& ch) {
  detail::require_dims({&rho0, &rho1}, "disturbance_entanglement");
  const double d =
      1.0 - 0.5 * entanglement_fidelity(rho0, ch) - 0.5 * entanglement_fidelity(rho1, ch);
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace infodist

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

// States, measurements and nonselective operations. Constructors validate
// eagerly and throw InvariantError instead of normalizing; the only repair
// performed is clamping eigenvalues in [-1e-10, 0) to zero.

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "infodist/error.hpp"
#include "infodist/linalg.hpp"

namespace infodist {

inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kProbeEigenCutoff = 1e-12;
inline constexpr double kProbabilityFloor = -1e-12;

class PureState {
 public:
  explicit PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw DimensionError("PureState: empty amplitude vector");
    const double n = norm(amps_);
    if (!(std::abs(n - 1.0) < kNormTolerance)) {
      throw InvariantError("PureState: amplitudes are not unit norm (norm = " + std::to_string(n) +
                           ")");
    }
  }
  /// Scales a nonzero vector to unit norm.
  static PureState normalized(CVector v) {
    const double n = norm(v);
    if (!(n > 0.0)) throw DomainError("PureState::normalized: zero vector");
    for (auto& z : v) z /= n;
    return PureState(std::move(v));
  }
  static PureState basis(std::size_t dim, std::size_t index) {
    CVector v(dim);
    v.at(index) = 1.0;
    return PureState(std::move(v));
  }

  std::size_t dim() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  CMatrix projector() const { return CMatrix::projector(amps_); }

 private:
  CVector amps_;
};

class DensityOperator {
 public:
  explicit DensityOperator(const CMatrix& m) : m_(validated(m)) {}
  explicit DensityOperator(const PureState& psi) : m_(psi.projector()) {}

  static DensityOperator maximally_mixed(std::size_t dim) {
    return DensityOperator(CMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
  }

  std::size_t dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  double purity() const {
    double s = 0.0;
    for (const auto& z : m_.entries()) s += std::norm(z);
    return s;
  }

 private:
  static CMatrix validated(const CMatrix& m) {
    if (!m.is_square() || m.rows() == 0) {
      throw DimensionError("DensityOperator: matrix " + m.shape() + " is not square");
    }
    const double herr = m.hermiticity_error();
    if (!(herr < kHermitianTolerance)) {
      throw InvariantError("DensityOperator: not Hermitian (max |M - M^dagger| = " +
                           std::to_string(herr) + ")");
    }
    const double tr = m.trace().real();
    if (!(std::abs(tr - 1.0) < kTraceTolerance)) {
      throw InvariantError("DensityOperator: trace is " + std::to_string(tr) + ", not 1");
    }
    const auto eig = herm_eig(m);
    const double lo = eig.values.front();
    if (lo < -kPsdTolerance) {
      throw InvariantError("DensityOperator: not positive semidefinite (eigenvalue " +
                           std::to_string(lo) + ")");
    }
    if (lo < 0.0) return eig.apply([](double x) { return x > 0.0 ? x : 0.0; });
    return hermitian_part(m);
  }

  CMatrix m_;
};

class Povm {
 public:
  explicit Povm(std::vector<CMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw DimensionError("Povm: no elements");
    const std::size_t d = elements_.front().rows();
    CMatrix sum(d, d);
    for (std::size_t b = 0; b < elements_.size(); ++b) {
      auto& e = elements_[b];
      if (!e.is_square() || e.rows() != d) {
        throw DimensionError("Povm: element " + std::to_string(b) + " is " + e.shape());
      }
      if (!e.is_hermitian()) {
        throw InvariantError("Povm: element " + std::to_string(b) + " is not Hermitian");
      }
      const auto eig = herm_eig(e);
      if (eig.values.front() < -kPsdTolerance) {
        throw InvariantError("Povm: element " + std::to_string(b) +
                             " is not positive semidefinite (eigenvalue " +
                             std::to_string(eig.values.front()) + ")");
      }
      e = eig.values.front() < 0.0 ? eig.apply([](double x) { return x > 0.0 ? x : 0.0; })
                                   : hermitian_part(e);
      sum += e;
    }
    const double cerr = max_abs_diff(sum, CMatrix::identity(d));
    if (!(cerr < kTraceTolerance)) {
      throw InvariantError("Povm: elements do not sum to identity (max deviation " +
                           std::to_string(cerr) + ")");
    }
  }

  std::size_t dim() const { return elements_.front().rows(); }
  std::size_t size() const { return elements_.size(); }
  const std::vector<CMatrix>& elements() const { return elements_; }
  const CMatrix& operator[](std::size_t b) const { return elements_[b]; }

  /// Projective measurement onto the columns of a unitary.
  static Povm from_basis(const CMatrix& basis) {
    std::vector<CMatrix> el;
    for (std::size_t j = 0; j < basis.cols(); ++j) el.push_back(CMatrix::projector(basis.column(j)));
    return Povm(std::move(el));
  }

 private:
  std::vector<CMatrix> elements_;
};

/// Kraus representation of a nonselective operation, sum_l A_l^dagger A_l = I.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<CMatrix> operators) : ops_(std::move(operators)) {
    if (ops_.empty()) throw DimensionError("KrausChannel: no operators");
    const std::size_t din = ops_.front().cols();
    const std::size_t dout = ops_.front().rows();
    CMatrix sum(din, din);
    for (std::size_t l = 0; l < ops_.size(); ++l) {
      if (ops_[l].cols() != din || ops_[l].rows() != dout) {
        throw DimensionError("KrausChannel: operator " + std::to_string(l) + " is " +
                             ops_[l].shape());
      }
      sum += ops_[l].adjoint() * ops_[l];
    }
    const double err = max_abs_diff(sum, CMatrix::identity(din));
    if (!(err < kTraceTolerance)) {
      throw InvariantError(
          "KrausChannel: normalization sum A^dagger A = I violated (max deviation " +
          std::to_string(err) + ")");
    }
  }

  static KrausChannel identity(std::size_t dim) { return KrausChannel({CMatrix::identity(dim)}); }

  std::size_t dim_in() const { return ops_.front().cols(); }
  std::size_t dim_out() const { return ops_.front().rows(); }
  const std::vector<CMatrix>& operators() const { return ops_; }

 private:
  std::vector<CMatrix> ops_;
};

/// sum_l A_l rho A_l^dagger
inline DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho) {
  if (ch.dim_in() != rho.dim()) {
    throw DimensionError("apply_channel: channel input dim " + std::to_string(ch.dim_in()) +
                         " vs state dim " + std::to_string(rho.dim()));
  }
  CMatrix out(ch.dim_out(), ch.dim_out());
  for (const auto& a : ch.operators()) out += a * rho.matrix() * a.adjoint();
  try {
    return DensityOperator(hermitian_part(out));
  } catch (const InvariantError& e) {
    throw InvariantError(std::string("apply_channel: output is not a state (broken channel): ") +
                         e.what());
  }
}

/// U (rho (x) sigma) U^dagger on A (x) E.
inline CMatrix joint_evolution(const CMatrix& u, const DensityOperator& rho,
                               const DensityOperator& probe) {
  return u * tensor_product(rho.matrix(), probe.matrix()) * u.adjoint();
}

/// Reduced map rho -> tr_E(U (rho (x) probe) U^dagger) as Kraus operators
/// A_ij = sqrt(sigma_j) <E_i|U|E_j> over the probe eigenbasis.
inline KrausChannel channel_from_unitary(const CMatrix& u, const DensityOperator& probe) {
  const std::size_t de = probe.dim();
  if (!u.is_square() || u.rows() % de != 0) {
    throw DimensionError("channel_from_unitary: unitary " + u.shape() +
                         " does not act on A (x) E with dim_e = " + std::to_string(de));
  }
  const double uerr = unitarity_error(u);
  if (!(uerr < kTraceTolerance)) {
    throw InvariantError("channel_from_unitary: interaction is not unitary (max |U^dagger U - I| = " +
                         std::to_string(uerr) + ")");
  }
  const std::size_t da = u.rows() / de;
  const auto eig = herm_eig(probe.matrix());
  std::vector<CMatrix> ops;
  for (std::size_t j = 0; j < de; ++j) {
    const double sj = eig.values[j];
    if (sj <= kProbeEigenCutoff) continue;
    const double w = std::sqrt(sj);
    for (std::size_t i = 0; i < de; ++i) {
      CMatrix a(da, da);
      for (std::size_t x = 0; x < da; ++x)
        for (std::size_t y = 0; y < da; ++y) {
          cplx s = 0.0;
          for (std::size_t e = 0; e < de; ++e) {
            const cplx ei = std::conj(eig.vectors(e, i));
            if (ei == cplx(0.0)) continue;
            for (std::size_t f = 0; f < de; ++f) s += ei * u(x * de + e, y * de + f) * eig.vectors(f, j);
          }
          a(x, y) = w * s;
        }
      if (a.max_abs() > 1e-14) ops.push_back(std::move(a));
    }
  }
  return KrausChannel(std::move(ops));
}

/// p(b) = tr(rho E_b), with values in [-1e-12, 0) clamped to zero.
inline std::vector<double> povm_probabilities(const DensityOperator& rho, const Povm& povm) {
  if (rho.dim() != povm.dim()) {
    throw DimensionError("povm_probabilities: state dim " + std::to_string(rho.dim()) +
                         " vs POVM dim " + std::to_string(povm.dim()));
  }
  std::vector<double> p(povm.size());
  double total = 0.0;
  for (std::size_t b = 0; b < povm.size(); ++b) {
    double v = (rho.matrix() * povm[b]).trace().real();
    if (v < 0.0) {
      if (v < kProbabilityFloor) {
        throw InvariantError("povm_probabilities: negative probability " + std::to_string(v));
      }
      v = 0.0;
    }
    p[b] = v;
    total += v;
  }
  if (!(std::abs(total - 1.0) < kTraceTolerance)) {
    throw InvariantError("povm_probabilities: probabilities sum to " + std::to_string(total));
  }
  return p;
}

/// Measurement realized by coupling the system E to an ancilla C prepared in
/// `ancilla`, applying V on E (x) C and measuring orthogonal projectors on C:
/// E_b = tr_C((I (x) sigma_c) V^dagger (I (x) Pi_b) V).
inline Povm povm_from_ancilla_model(const CMatrix& v, const DensityOperator& ancilla,
                                    const std::vector<CMatrix>& projectors) {
  const std::size_t dc = ancilla.dim();
  if (!v.is_square() || v.rows() % dc != 0) {
    throw DimensionError("povm_from_ancilla_model: V " + v.shape() +
                         " does not act on E (x) C with dim_c = " + std::to_string(dc));
  }
  if (!(unitarity_error(v) < kTraceTolerance)) {
    throw InvariantError("povm_from_ancilla_model: V is not unitary");
  }
  if (projectors.empty()) throw InvariantError("povm_from_ancilla_model: no projectors");
  CMatrix sum(dc, dc);
  for (std::size_t b = 0; b < projectors.size(); ++b) {
    const auto& p = projectors[b];
    if (!p.is_square() || p.rows() != dc) {
      throw DimensionError("povm_from_ancilla_model: projector " + std::to_string(b) + " is " +
                           p.shape());
    }
    for (std::size_t c = b; c < projectors.size(); ++c) {
      const CMatrix prod = p * projectors[c];
      const double err = c == b ? max_abs_diff(prod, p) : prod.max_abs();
      if (!(err < kTraceTolerance)) {
        throw InvariantError("povm_from_ancilla_model: projectors " + std::to_string(b) + ", " +
                             std::to_string(c) + " are not orthogonal projectors");
      }
    }
    sum += p;
  }
  if (!(max_abs_diff(sum, CMatrix::identity(dc)) < kTraceTolerance)) {
    throw InvariantError("povm_from_ancilla_model: projectors are not complete");
  }
  const std::size_t de = v.rows() / dc;
  const CMatrix ie = CMatrix::identity(de);
  const CMatrix lhs = tensor_product(ie, ancilla.matrix());
  const CMatrix vd = v.adjoint();
  std::vector<CMatrix> elements;
  elements.reserve(projectors.size());
  for (const auto& p : projectors) {
    const CMatrix w = lhs * vd * tensor_product(ie, p) * v;
    elements.push_back(hermitian_part(partial_trace(w, de, dc, Keep::A)));
  }
  return Povm(std::move(elements));
}

}  // namespace infodist

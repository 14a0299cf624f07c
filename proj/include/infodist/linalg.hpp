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

// Dense complex matrices sized for desk-scale quantum problems (at most a
// few dozen rows). Composite systems use the A-major index convention
// everywhere: basis state |i>_A |k>_E has flat index i * dim_e + k.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infodist/error.hpp"

namespace infodist {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("CMatrix: entries length " + std::to_string(data_.size()) +
                           " != rows*cols " + std::to_string(rows_ * cols_));
    }
  }
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("CMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static CMatrix diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }
  static CMatrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }
  /// |v><w|
  static CMatrix outer(std::span<const cplx> v, std::span<const cplx> w) {
    CMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
    return m;
  }
  static CMatrix projector(std::span<const cplx> v) { return outer(v, v); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::span<const cplx> entries() const { return data_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  CVector column(std::size_t j) const {
    CVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  CMatrix adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  /// max |M - M^dagger|; infinity for non-square input.
  double hermiticity_error() const {
    if (!is_square()) return std::numeric_limits<double>::infinity();
    double e = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return e;
  }
  bool is_hermitian(double tol = kHermitianTolerance) const { return hermiticity_error() < tol; }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CMatrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator-(CMatrix a) { return a *= -1.0; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(CMatrix a, double s) { return a *= cplx(s); }
  friend CMatrix operator*(double s, CMatrix a) { return a *= cplx(s); }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("CMatrix product: " + a.shape() + " * " + b.shape());
    }
    CMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend CVector operator*(const CMatrix& a, std::span<const cplx> v) {
    if (a.cols_ != v.size()) throw DimensionError("CMatrix * vector: " + a.shape());
    CVector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const CMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("CMatrix ") + op + ": " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// max_ij |a_ij - b_ij|
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

inline double norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// <v|w>
inline cplx inner(std::span<const cplx> v, std::span<const cplx> w) {
  if (v.size() != w.size()) throw DimensionError("inner: length mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * w[i];
  return s;
}

/// <v|M|v>
inline cplx expectation(const CMatrix& m, std::span<const cplx> v) { return inner(v, m * v); }

inline CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

inline double unitarity_error(const CMatrix& u) {
  if (!u.is_square()) return std::numeric_limits<double>::infinity();
  return max_abs_diff(u.adjoint() * u, CMatrix::identity(u.cols()));
}

/// Kronecker product, A-major: entry (i*rB + k, j*cB + l) = a(i,j) * b(k,l).
inline CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

inline CVector tensor_product(std::span<const cplx> a, std::span<const cplx> b) {
  CVector r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) r[i * b.size() + k] = a[i] * b[k];
  return r;
}

/// Modified Gram-Schmidt with one reorthogonalization pass on the columns.
/// Empty if a column is (numerically) dependent on its predecessors.
inline std::optional<CMatrix> orthonormalize_columns(const CMatrix& m, double min_norm = 1e-10) {
  CMatrix q = m;
  for (std::size_t j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < q.rows(); ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < q.rows(); ++i) q(i, j) -= proj * q(i, k);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < q.rows(); ++i) nrm += std::norm(q(i, j));
    nrm = std::sqrt(nrm);
    if (!(nrm > min_norm)) return std::nullopt;
    for (std::size_t i = 0; i < q.rows(); ++i) q(i, j) /= nrm;
  }
  return q;
}

enum class Keep { A, E };

/// Partial trace of an operator on A (x) E. Keep::A traces out E, Keep::E traces out A.
inline CMatrix partial_trace(const CMatrix& m, std::size_t dim_a, std::size_t dim_e, Keep keep) {
  if (dim_a == 0 || dim_e == 0 || !m.is_square() || m.rows() != dim_a * dim_e) {
    throw DimensionError("partial_trace: matrix " + m.shape() + " is not (" +
                         std::to_string(dim_a) + "*" + std::to_string(dim_e) + ")-square");
  }
  if (keep == Keep::A) {
    CMatrix r(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i)
      for (std::size_t j = 0; j < dim_a; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < dim_e; ++k) s += m(i * dim_e + k, j * dim_e + k);
        r(i, j) = s;
      }
    return r;
  }
  CMatrix r(dim_e, dim_e);
  for (std::size_t k = 0; k < dim_e; ++k)
    for (std::size_t l = 0; l < dim_e; ++l) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < dim_a; ++i) s += m(i * dim_e + k, i * dim_e + l);
      r(k, l) = s;
    }
  return r;
}

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column i pairs with values[i]

  CMatrix reconstruct() const {
    return apply([](double x) { return x; });
  }
  /// V f(diag(values)) V^dagger
  template <typename F>
  CMatrix apply(F&& f) const {
    const std::size_t n = values.size();
    CMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const double fk = f(values[k]);
      if (fk == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const cplx vik = vectors(i, k) * fk;
        for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(vectors(j, k));
      }
    }
    return r;
  }
};

namespace detail {

// Cyclic complex Jacobi. Each rotation J zeroes the (p,q) pair of a Hermitian
// matrix: J = [[c, s e^{i phi}], [-s e^{-i phi}, c]] with e^{i phi} = a_pq / |a_pq|.
inline EigenDecomposition jacobi_eigen(CMatrix a) {
  const std::size_t n = a.rows();
  CMatrix v = CMatrix::identity(n);
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return s;
  };
  double scale = 0.0;
  for (const auto& z : a.entries()) scale += std::norm(z);
  const double target = 1e-32 * std::max(scale, 1e-300);

  for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (mag < 1e-300 || mag < 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double tau = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(tau) > 1e150) {
          t = 0.5 / tau;
        } else {
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx ph = apq / mag;
        const cplx jpq = s * ph;             // J(p,q)
        const cplx jqp = -s * std::conj(ph);  // J(q,p)

        // A <- A J (columns p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * jpq + akq * c;
        }
        // A <- J^dagger A (rows p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * c;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EigenDecomposition out{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline void require_hermitian(const CMatrix& m, const char* where) {
  const double err = m.hermiticity_error();
  if (!(err < kHermitianTolerance)) {
    throw InvariantError(std::string(where) + ": input is not Hermitian (max |M - M^dagger| = " +
                         std::to_string(err) + ")");
  }
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
inline EigenDecomposition herm_eig(const CMatrix& m) {
  detail::require_hermitian(m, "herm_eig");
  return detail::jacobi_eigen(hermitian_part(m));
}

inline std::vector<double> eigenvalues(const CMatrix& m) { return herm_eig(m).values; }

/// Principal square root of a PSD matrix. Eigenvalues in [-1e-10, 0) are clamped to zero.
inline CMatrix psd_sqrt(const CMatrix& m) {
  const auto eig = herm_eig(m);
  if (!eig.values.empty() && eig.values.front() < -kPsdTolerance) {
    throw InvariantError("psd_sqrt: matrix is not positive semidefinite (eigenvalue " +
                         std::to_string(eig.values.front()) + ")");
  }
  return eig.apply([](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

/// |M|: same eigenbasis, absolute eigenvalues.
inline CMatrix op_abs(const CMatrix& m) {
  return herm_eig(m).apply([](double x) { return std::abs(x); });
}

/// tr|M| = sum of |eigenvalues|.
inline double trace_norm(const CMatrix& m) {
  const auto vals = eigenvalues(m);
  double s = 0.0;
  for (double x : vals) s += std::abs(x);
  return s;
}

}  // namespace infodist

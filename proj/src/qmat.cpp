// Copyright 2026 The steercert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "steercert/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "steercert/errors.hpp"

namespace steercert {

namespace {

void require_finite(std::span<const cplx> v) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("matrix entry is not finite");
    }
  }
}

// Rotate the phase of v so that its first non-negligible component is real
// and positive.
void fix_phase(std::span<cplx> v) {
  double scale = 0.0;
  for (const auto& z : v) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return;
  for (const auto& z : v) {
    if (std::abs(z) > 1e-12 * scale) {
      const cplx phase = std::conj(z) / std::abs(z);
      for (auto& w : v) w *= phase;
      return;
    }
  }
}

HermitianEig finalize(std::vector<double> values, const CMatrix& vectors) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  CVector col(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = values[order[k]];
    for (std::size_t r = 0; r < n; ++r) col[r] = vectors(r, order[k]);
    fix_phase(col);
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = col[r];
  }
  return out;
}

HermitianEig eig_2x2(const CMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const cplx b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(b));
  const double lo = mean - half_gap;
  const double hi = mean + half_gap;

  CMatrix v(2, 2);
  if (std::abs(b) <= 1e-300 || half_gap == 0.0) {
    // Already diagonal.
    if (a >= d) {
      v(0, 0) = 1.0;
      v(1, 1) = 1.0;
    } else {
      v(1, 0) = 1.0;
      v(0, 1) = 1.0;
    }
    return finalize({std::max(a, d), std::min(a, d)}, v);
  }
  // Two candidate null vectors of (M - hi); keep the better conditioned one.
  cplx u0 = b, u1 = hi - a;
  cplx w0 = hi - d, w1 = std::conj(b);
  if (std::norm(w0) + std::norm(w1) > std::norm(u0) + std::norm(u1)) {
    u0 = w0;
    u1 = w1;
  }
  const double nu = std::sqrt(std::norm(u0) + std::norm(u1));
  u0 /= nu;
  u1 /= nu;
  v(0, 0) = u0;
  v(1, 0) = u1;
  // Orthogonal complement.
  v(0, 1) = -std::conj(u1);
  v(1, 1) = std::conj(u0);
  return finalize({hi, lo}, v);
}

HermitianEig eig_jacobi(const CMatrix& m) {
  const std::size_t n = m.rows();
  CMatrix a = m.hermitize();
  CMatrix v = CMatrix::identity(n);
  const double scale = std::max(1.0, a.frobenius_norm());

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        const double ag = std::abs(g);
        if (ag <= 1e-300) continue;
        const cplx e = g / ag;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * ag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U = [[c, s e], [-s conj(e), c]] on (p, q); A <- U^dagger A U.
        const cplx upq = s * e;
        const cplx uqp = -s * std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {  // A <- A U
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * uqp;
          a(k, q) = akp * upq + akq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- U^dagger A
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {  // V <- V U
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * uqp;
          v(k, q) = vkp * upq + vkq * c;
        }
      }
    }
  }
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = a(k, k).real();
  return finalize(std::move(values), v);
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionMismatch("expected " + std::to_string(rows_ * cols_) + " entries, got " +
                            std::to_string(data_.size()));
  }
  require_finite(data_);
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.data_);
  return m;
}

CMatrix CMatrix::outer(std::span<const cplx> v, std::span<const cplx> w) {
  CMatrix m(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

cplx CMatrix::trace() const {
  if (!is_square()) throw DimensionMismatch("trace of a non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix CMatrix::hermitize() const {
  if (!is_square()) throw DimensionMismatch("hermitize of a non-square matrix");
  CMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
  CMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CVector operator*(const CMatrix& m, std::span<const cplx> v) {
  if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector product");
  CVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

namespace pauli {
CMatrix I() { return CMatrix::identity(2); }
CMatrix X() { return CMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
CMatrix Y() { return CMatrix{{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
CMatrix Z() { return CMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
CMatrix along(double nx, double ny, double nz) {
  return CMatrix{{nz, cplx(nx, -ny)}, {cplx(nx, ny), -nz}};
}
}  // namespace pauli

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

CVector kron(std::span<const cplx> a, std::span<const cplx> b) {
  CVector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

CMatrix partial_trace_first(const CMatrix& m, std::size_t dimA, std::size_t dimB) {
  const std::size_t n = dimA * dimB;
  if (dimA == 0 || dimB == 0 || m.rows() != n || m.cols() != n) {
    throw DimensionMismatch("partial_trace_first: operator is " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + ", expected " + std::to_string(n) +
                            "x" + std::to_string(n));
  }
  CMatrix out(dimB, dimB);
  for (std::size_t a = 0; a < dimA; ++a)
    for (std::size_t i = 0; i < dimB; ++i)
      for (std::size_t j = 0; j < dimB; ++j) out(i, j) += m(a * dimB + i, a * dimB + j);
  return out;
}

CMatrix partial_trace_second(const CMatrix& m, std::size_t dimA, std::size_t dimB) {
  const std::size_t n = dimA * dimB;
  if (dimA == 0 || dimB == 0 || m.rows() != n || m.cols() != n) {
    throw DimensionMismatch("partial_trace_second: operator is " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + ", expected " + std::to_string(n) +
                            "x" + std::to_string(n));
  }
  CMatrix out(dimA, dimA);
  for (std::size_t i = 0; i < dimA; ++i)
    for (std::size_t j = 0; j < dimA; ++j)
      for (std::size_t b = 0; b < dimB; ++b) out(i, j) += m(i * dimB + b, j * dimB + b);
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("max_abs_diff");
  double d = 0.0;
  auto ea = a.entries(), eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) d = std::max(d, std::abs(ea[i] - eb[i]));
  return d;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

HermitianEig eig_hermitian(const CMatrix& m, double herm_tol) {
  if (!m.is_square() || m.rows() == 0) throw DimensionMismatch("eig_hermitian: not square");
  if (!is_hermitian(m, herm_tol)) throw InvalidArgument("eig_hermitian: matrix is not Hermitian");
  if (m.rows() == 1) return {{m(0, 0).real()}, CMatrix::identity(1)};
  if (m.rows() == 2) return eig_2x2(m);
  return eig_jacobi(m);
}

double min_eigenvalue(const CMatrix& m) {
  return eig_hermitian(m.hermitize()).eigenvalues.back();
}

bool is_psd(const CMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  return min_eigenvalue(m) >= -tol;
}

double vector_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner product");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace steercert

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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace steercert {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Default tolerance for logical predicates (positivity, Hermiticity).
inline constexpr double kLogicalTol = 1e-9;
// Default tolerance for algebraic identities.
inline constexpr double kAlgebraicTol = 1e-12;

/// Dense row-major complex matrix for small Hilbert spaces.
///
/// Entries are always finite; constructors reject NaN/Inf. A default
/// constructed matrix is 0x0 and only useful as a placeholder.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> diag);
  // |v><w|
  static CMatrix outer(std::span<const cplx> v, std::span<const cplx> w);
  static CMatrix projector(std::span<const cplx> v) { return outer(v, v); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::span<const cplx> entries() const { return data_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;
  // Hermitian part (M + M^dagger) / 2.
  CMatrix hermitize() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CVector operator*(const CMatrix& m, std::span<const cplx> v);

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted descending; column k of `eigenvectors` belongs to
/// eigenvalues[k] and has its first nonzero component real and positive.
struct HermitianEig {
  std::vector<double> eigenvalues;
  CMatrix eigenvectors;
};

namespace pauli {
CMatrix I();
CMatrix X();
CMatrix Y();
CMatrix Z();
// (n_x X + n_y Y + n_z Z)
CMatrix along(double nx, double ny, double nz);
}  // namespace pauli

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(std::span<const cplx> a, std::span<const cplx> b);

/// Tr_A of an operator on C^dimA (x) C^dimB. Throws DimensionMismatch.
CMatrix partial_trace_first(const CMatrix& m, std::size_t dimA, std::size_t dimB);
/// Tr_B of an operator on C^dimA (x) C^dimB. Throws DimensionMismatch.
CMatrix partial_trace_second(const CMatrix& m, std::size_t dimA, std::size_t dimB);

double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool is_hermitian(const CMatrix& m, double tol = kLogicalTol);

/// Throws InvalidArgument if `m` is not Hermitian within `herm_tol`.
/// 2x2 inputs use the closed form, larger ones cyclic Jacobi.
HermitianEig eig_hermitian(const CMatrix& m, double herm_tol = 1e-10);

/// True iff the smallest eigenvalue is >= -tol. Non-Hermitian input
/// (beyond tol) is reported as not PSD.
bool is_psd(const CMatrix& m, double tol = kLogicalTol);

double min_eigenvalue(const CMatrix& m);

double vector_norm(std::span<const cplx> v);
cplx inner(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace steercert

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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "steercert/errors.hpp"
#include "steercert/qmat.hpp"

using namespace steercert;

namespace {

double diag_entry(const CMatrix& m, std::size_t i) { return m(i, i).real(); }

}  // namespace

TEST_CASE("kron of identities is the identity") {
  CHECK(max_abs_diff(kron(pauli::I(), pauli::I()), CMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron of diagonal matrices") {
  const auto k = kron(pauli::Z(), pauli::I());
  const double want[] = {1, 1, -1, -1};
  for (std::size_t i = 0; i < 4; ++i) CHECK(diag_entry(k, i) == want[i]);
  CHECK(max_abs_diff(k, k.adjoint()) == 0.0);
}

TEST_CASE("kron(sigma_x, sigma_z) entries") {
  const auto k = kron(pauli::X(), pauli::Z());
  CHECK(k(0, 2) == cplx(1.0));
  CHECK(k(0, 3) == cplx(0.0));
  CHECK(k(1, 3) == cplx(-1.0));
  CHECK(k.rows() == 4);
  CHECK(k.cols() == 4);
}

TEST_CASE("kron dimensions multiply for rectangular inputs") {
  const CMatrix a(2, 3), b(4, 1);
  const auto k = kron(a, b);
  CHECK(k.rows() == 8);
  CHECK(k.cols() == 3);
}

TEST_CASE("partial trace of a product state") {
  std::mt19937_64 rng(11);
  const auto ra = oracle::random_density(rng, 3, 3).matrix();
  const auto rb = oracle::random_density(rng, 2, 2).matrix();
  const auto pt = partial_trace_first(kron(2.0 * ra, rb), 3, 2);
  CHECK(max_abs_diff(pt, 2.0 * rb) < 1e-12);
  const auto pt2 = partial_trace_second(kron(ra, 3.0 * rb), 3, 2);
  CHECK(max_abs_diff(pt2, 3.0 * ra) < 1e-12);
}

TEST_CASE("partial trace of the Bell projector is maximally mixed") {
  const double s = 1.0 / std::sqrt(2.0);
  const CVector phi{s, 0.0, 0.0, s};
  const auto pt = partial_trace_first(CMatrix::projector(phi), 2, 2);
  CHECK(max_abs_diff(pt, 0.5 * CMatrix::identity(2)) < 1e-15);
}

TEST_CASE("partial trace of I4") {
  CHECK(max_abs_diff(partial_trace_first(CMatrix::identity(4), 2, 2), 2.0 * CMatrix::identity(2)) ==
        0.0);
}

TEST_CASE("partial trace rejects mismatched dimensions") {
  CHECK_THROWS_AS(partial_trace_first(CMatrix::identity(4), 3, 2), DimensionMismatch);
  CHECK_THROWS_AS(partial_trace_second(CMatrix(4, 3), 2, 2), DimensionMismatch);
}

TEST_CASE("eig of sigma_z") {
  const auto e = eig_hermitian(pauli::Z());
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(-1.0));
  CHECK(std::abs(e.eigenvectors(0, 0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(e.eigenvectors(1, 0)) < 1e-15);
  CHECK(std::abs(e.eigenvectors(1, 1) - cplx(1.0)) < 1e-15);
}

TEST_CASE("eig of sigma_x") {
  const auto e = eig_hermitian(pauli::X());
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(-1.0));
  CHECK(std::abs(e.eigenvectors(0, 0) - cplx(s)) < 1e-14);
  CHECK(std::abs(e.eigenvectors(1, 0) - cplx(s)) < 1e-14);
  CHECK(std::abs(e.eigenvectors(0, 1) - cplx(s)) < 1e-14);
  CHECK(std::abs(e.eigenvectors(1, 1) + cplx(s)) < 1e-14);
}

TEST_CASE("eig of a rotated unit Bloch observable") {
  const double t = std::numbers::pi / 8;
  const auto e = eig_hermitian(pauli::along(std::sin(2 * t), 0.0, std::cos(2 * t)));
  CHECK(std::abs(e.eigenvalues[0] - 1.0) < 1e-14);
  CHECK(std::abs(e.eigenvalues[1] + 1.0) < 1e-14);
}

TEST_CASE("eig rejects non-Hermitian input") {
  CMatrix m{{0.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(eig_hermitian(m), InvalidArgument);
  CHECK_THROWS_AS(eig_hermitian(CMatrix(2, 3)), DimensionMismatch);
}

TEST_CASE("eig handles degenerate spectra") {
  const auto e = eig_hermitian(CMatrix::identity(4));
  for (double v : e.eigenvalues) CHECK(v == doctest::Approx(1.0));
  CHECK(max_abs_diff(e.eigenvectors.adjoint() * e.eigenvectors, CMatrix::identity(4)) < 1e-12);
}

TEST_CASE("is_psd examples") {
  CHECK(is_psd(pauli::I(), 1e-9));
  CHECK_FALSE(is_psd(pauli::Z(), 1e-9));
  CHECK(is_psd(CMatrix::diagonal(std::vector<double>{1.0, -1e-10}), 1e-9));
  CHECK_FALSE(is_psd(CMatrix::diagonal(std::vector<double>{1.0, -1e-8}), 1e-9));
}

TEST_CASE("matrices reject non-finite entries") {
  CHECK_THROWS_AS(CMatrix(1, 1, {cplx(std::nan(""), 0.0)}), InvalidArgument);
  CHECK_THROWS_AS(CMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("property: kron is associative") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto a = oracle::random_matrix(rng, 2, 3);
    const auto b = oracle::random_matrix(rng, 2, 2);
    const auto c = oracle::random_matrix(rng, 3, 1);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
  }
}

TEST_CASE("property: partial trace preserves the trace") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dA = 1 + i % 4, dB = 1 + (i / 4) % 3;
    const auto m = oracle::random_matrix(rng, dA * dB, dA * dB);
    CHECK(std::abs(partial_trace_first(m, dA, dB).trace() - m.trace()) < 1e-12);
    CHECK(std::abs(partial_trace_second(m, dA, dB).trace() - m.trace()) < 1e-12);
  }
}

TEST_CASE("property: partial trace of a Kronecker product") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto a = oracle::random_matrix(rng, 3, 3);
    const auto b = oracle::random_matrix(rng, 2, 2);
    CHECK(max_abs_diff(partial_trace_first(kron(a, b), 3, 2), a.trace() * b) < 1e-12);
  }
}

TEST_CASE("property: eigendecomposition reconstructs and is orthonormal") {
  std::mt19937_64 rng(4);
  for (std::size_t n : {2u, 4u}) {
    for (int i = 0; i < 1000; ++i) {
      const auto m = oracle::random_hermitian(rng, n);
      const auto e = eig_hermitian(m);
      const auto& v = e.eigenvectors;
      const auto recon = v * CMatrix::diagonal(e.eigenvalues) * v.adjoint();
      CHECK((recon - m).frobenius_norm() <= 1e-10 * std::max(1.0, m.frobenius_norm()));
      CHECK(max_abs_diff(v.adjoint() * v, CMatrix::identity(n)) <= 1e-10);
      for (std::size_t k = 0; k + 1 < n; ++k) CHECK(e.eigenvalues[k] >= e.eigenvalues[k + 1]);
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t r = 0;
        while (r < n && std::abs(v(r, k)) < 1e-12) ++r;
        REQUIRE(r < n);
        CHECK(v(r, k).real() > 0.0);
        CHECK(std::abs(v(r, k).imag()) < 1e-12);
      }
    }
  }
}

TEST_CASE("property: eigendecomposition of larger matrices") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto m = oracle::random_hermitian(rng, 16);
    const auto e = eig_hermitian(m);
    const auto recon = e.eigenvectors * CMatrix::diagonal(e.eigenvalues) * e.eigenvectors.adjoint();
    CHECK((recon - m).frobenius_norm() <= 1e-10 * std::max(1.0, m.frobenius_norm()));
  }
}

TEST_CASE("property: is_psd agrees with Gram matrices") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto g = oracle::random_matrix(rng, 4, 4);
    const auto psd = (g * g.adjoint()).hermitize();
    CHECK(is_psd(psd, 1e-9));
    CHECK_FALSE(is_psd(psd - (min_eigenvalue(psd) + 1e-3) * CMatrix::identity(4), 1e-9));
  }
}

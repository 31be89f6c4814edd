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

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "steercert/qmat.hpp"
#include "steercert/scenario.hpp"

namespace steercert::oracle {

// p(ab|xy) = <psi| Pi_a (x) Pi_b |psi> on an explicit 4-dim state, with
// qubit projectors written out from Bloch vectors. No assemblage in between.
inline std::array<double, 16> born_table(const CMatrix& rho,
                                         const std::array<std::array<double, 3>, 2>& alice,
                                         const std::array<std::array<double, 3>, 2>& bob) {
  auto proj = [](const std::array<double, 3>& n, int outcome) {
    const double s = outcome == 0 ? 1.0 : -1.0;
    return CMatrix{{0.5 * (1.0 + s * n[2]), 0.5 * s * cplx(n[0], -n[1])},
                   {0.5 * s * cplx(n[0], n[1]), 0.5 * (1.0 - s * n[2])}};
  };
  std::array<double, 16> p{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const CMatrix pa = proj(alice[x], a), pb = proj(bob[y], b);
          double v = 0.0;
          // Tr[(Pa (x) Pb) rho], expanded entrywise.
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                  v += (pa(i, j) * pb(k, l) * rho(j * 2 + l, i * 2 + k)).real();
          p[CorrelationTable::index(a, b, x, y)] = v;
        }
  return p;
}

inline std::array<std::array<double, 3>, 2> mub_bloch() {
  return {{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}}};
}

inline CMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = cplx(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

inline CMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> g;
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline CVector random_unit_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CVector v(n);
  double norm = 0.0;
  for (auto& z : v) {
    z = cplx(g(rng), g(rng));
    norm += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(norm);
  return v;
}

// G G^dagger / Tr, G Ginibre of the given rank.
inline DensityMatrix random_density(std::mt19937_64& rng, std::size_t n, std::size_t rank) {
  const CMatrix g = random_matrix(rng, n, rank);
  CMatrix rho = (g * g.adjoint()).hermitize();
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix(rho.hermitize());
}

inline std::array<double, 3> random_bloch(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::array<double, 3> n{g(rng), g(rng), g(rng)};
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  for (auto& v : n) v /= len;
  return n;
}

inline MeasurementPair random_qubit_pair(std::mt19937_64& rng) {
  const auto n0 = random_bloch(rng), n1 = random_bloch(rng);
  return {DichotomicMeasurement::qubit(n0[0], n0[1], n0[2], 0),
          DichotomicMeasurement::qubit(n1[0], n1[1], n1[2], 1)};
}

// Projective measurement on C^d onto a random subspace of random rank.
inline DichotomicMeasurement random_projective(std::mt19937_64& rng, std::size_t d, int label) {
  std::uniform_int_distribution<std::size_t> rank_dist(0, d);
  const std::size_t rank = rank_dist(rng);
  // Gram-Schmidt on random vectors.
  std::vector<CVector> basis;
  while (basis.size() < rank) {
    CVector v = random_unit_vector(rng, d);
    for (const auto& b : basis) {
      const cplx c = inner(b, v);
      for (std::size_t i = 0; i < d; ++i) v[i] -= c * b[i];
    }
    const double n = vector_norm(v);
    if (n < 1e-6) continue;
    for (auto& z : v) z /= n;
    basis.push_back(v);
  }
  CMatrix p(d, d);
  for (const auto& b : basis) p += CMatrix::projector(b);
  return DichotomicMeasurement::from_projector(p.hermitize(), label);
}

// Separable two-qubit state sum_k w_k rho_A^k (x) rho_B^k.
inline DensityMatrix random_separable(std::mt19937_64& rng, int terms) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CMatrix rho(4, 4);
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    const double w = u(rng);
    total += w;
    rho += w * kron(random_density(rng, 2, 2).matrix(), random_density(rng, 2, 2).matrix());
  }
  rho *= 1.0 / total;
  return DensityMatrix(rho.hermitize());
}

// Assemblage built directly from an LHS model: hidden states
// sigma_lambda = w_lambda (I + r_lambda . sigma)/2 with |r| <= 1 and a
// random response function per lambda, sigma_{a|x} = sum D(a|x) sigma_lambda.
inline Assemblage explicit_lhs_assemblage(std::mt19937_64& rng, int hidden) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> bit(0, 1);
  std::array<CMatrix, 4> el{CMatrix(2, 2), CMatrix(2, 2), CMatrix(2, 2), CMatrix(2, 2)};
  std::vector<double> w(hidden);
  double total = 0.0;
  for (auto& v : w) total += (v = u(rng));
  for (int k = 0; k < hidden; ++k) {
    const auto n = random_bloch(rng);
    const double r = u(rng);
    const CMatrix s = (0.5 * w[k] / total) *
                      (CMatrix::identity(2) + pauli::along(r * n[0], r * n[1], r * n[2]));
    const int a0 = bit(rng), a1 = bit(rng);
    el[Assemblage::index(a0, 0)] += s;
    el[Assemblage::index(a1, 1)] += s;
  }
  return Assemblage(el);
}

}  // namespace steercert::oracle

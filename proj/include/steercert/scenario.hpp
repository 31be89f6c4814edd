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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "steercert/qmat.hpp"

namespace steercert {

// Bob's side of every scenario is a qubit.
inline constexpr std::size_t kBobDim = 2;

/// Normalized pure state vector.
class PureState {
 public:
  // Throws InvalidArgument unless the norm is 1 within 1e-10.
  explicit PureState(CVector amplitudes);

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  CMatrix projector() const { return CMatrix::projector(amplitudes_); }

 private:
  CVector amplitudes_;
};

/// cos(theta)|00> + sin(theta)|11>.
PureState two_qubit_schmidt_state(double theta);

/// Unit-trace positive semidefinite operator.
class DensityMatrix {
 public:
  // Throws InvalidArgument if not Hermitian (1e-10), PSD (1e-9) and unit trace (1e-10).
  explicit DensityMatrix(CMatrix m);
  explicit DensityMatrix(const PureState& psi) : DensityMatrix(psi.projector()) {}

  std::size_t dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

/// v * rho + (1 - v) * I/d. v in [0, 1].
DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double visibility);

/// Projective two-outcome measurement. Outcome a corresponds to the
/// eigenvalue (-1)^a of the observable projector0 - projector1.
class DichotomicMeasurement {
 public:
  // projector1 = I - projector0. Throws InvalidArgument unless projector0
  // is a Hermitian idempotent.
  static DichotomicMeasurement from_projector(const CMatrix& projector0, int label);
  // Requires a Hermitian involution (A^2 = I).
  static DichotomicMeasurement from_observable(const CMatrix& observable, int label);
  // Qubit observable n . sigma for a unit Bloch vector n.
  static DichotomicMeasurement qubit(double nx, double ny, double nz, int label);

  std::size_t dim() const { return p0_.rows(); }
  const CMatrix& projector(int outcome) const { return outcome == 0 ? p0_ : p1_; }
  CMatrix observable() const { return p0_ - p1_; }
  int label() const { return label_; }

 private:
  DichotomicMeasurement(CMatrix p0, CMatrix p1, int label)
      : p0_(std::move(p0)), p1_(std::move(p1)), label_(label) {}

  CMatrix p0_;
  CMatrix p1_;
  int label_ = 0;
};

using MeasurementPair = std::array<DichotomicMeasurement, 2>;

/// Bob's mutually unbiased settings: B0 = sigma_z, B1 = sigma_x.
MeasurementPair bob_mub_settings();

/// The four conditional states sigma_{a|x} prepared on Bob's qubit.
class Assemblage {
 public:
  // Elements in the order (a,x) = (0,0), (1,0), (0,1), (1,1).
  // Throws MalformedInput if any invariant fails at `tol`.
  explicit Assemblage(std::array<CMatrix, 4> elements, double tol = kLogicalTol);

  const CMatrix& element(int a, int x) const { return elements_[index(a, x)]; }
  // p(a|x) = Tr sigma_{a|x}
  double marginal(int a, int x) const { return element(a, x).trace().real(); }
  // rho_B, averaged over the two settings.
  CMatrix bob_state() const;

  static constexpr std::size_t index(int a, int x) {
    return static_cast<std::size_t>(2 * x + a);
  }

  // Convex combination mu * a + (1 - mu) * b.
  static Assemblage mix(const Assemblage& a, const Assemblage& b, double mu);

 private:
  std::array<CMatrix, 4> elements_;
};

/// Joint probabilities p(ab|xy).
class CorrelationTable {
 public:
  // Entries indexed by index(a, b, x, y). `shots_per_setting` = 0 marks an
  // exact table; otherwise the table holds empirical frequencies and the
  // no-signalling check uses empirical_signalling_tolerance().
  // Throws MalformedInput if an invariant fails.
  explicit CorrelationTable(std::array<double, 16> probabilities,
                            std::uint64_t shots_per_setting = 0,
                            double tol = kLogicalTol);

  double p(int a, int b, int x, int y) const { return p_[index(a, b, x, y)]; }
  std::span<const double> entries() const { return p_; }
  std::uint64_t shots_per_setting() const { return shots_; }
  bool is_empirical() const { return shots_ > 0; }

  // Alice's marginal sum_b p(ab|xy).
  double alice_marginal(int a, int x, int y) const { return p(a, 0, x, y) + p(a, 1, x, y); }
  double bob_marginal(int b, int x, int y) const { return p(0, b, x, y) + p(1, b, x, y); }
  // Largest violation of no-signalling in either direction.
  double signalling() const;

  // Six standard deviations of the difference of two independently
  // estimated marginals at `shots` samples per setting.
  static double empirical_signalling_tolerance(std::uint64_t shots);

  static constexpr std::size_t index(int a, int b, int x, int y) {
    return static_cast<std::size_t>(((a * 2 + b) * 2 + x) * 2 + y);
  }

 private:
  std::array<double, 16> p_;
  std::uint64_t shots_ = 0;
};

/// sigma_{a|x} = Tr_A[(M_{a|x} (x) I_2) rho] with rho on C^dimA (x) C^2.
Assemblage assemblage_from_state(const DensityMatrix& rho, const MeasurementPair& alice,
                                 std::size_t dimA);

/// p(ab|xy) = Tr(M_{b|y} sigma_{a|x}).
CorrelationTable correlations_from_assemblage(const Assemblage& assemblage,
                                              const MeasurementPair& bob);

/// <A_x B_y> = sum_ab (-1)^(a+b) p(ab|xy).
double correlator(const CorrelationTable& table, int x, int y);

/// Counter-based SplitMix64: the output for (seed, counter) equals the
/// counter-th draw (0-based) of a sequential SplitMix64 stream seeded with
/// `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter);

/// Empirical table from `shots_per_setting` draws for each (x, y).
///
/// Shot n of setting pair (x, y) uses the uniform variate
///   u = (splitmix64_at(seed, ((2x + y) << 40) + n) >> 11) * 2^-53
/// and selects the first outcome (a, b), in order 00, 01, 10, 11, whose
/// cumulative probability exceeds u. Throws InvalidArgument for zero shots.
CorrelationTable sample_counts(const CorrelationTable& table, std::uint64_t shots_per_setting,
                               std::uint64_t seed);

}  // namespace steercert

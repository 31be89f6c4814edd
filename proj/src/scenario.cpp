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

#include "steercert/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "steercert/errors.hpp"

namespace steercert {

PureState::PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw InvalidArgument("pure state needs at least one amplitude");
  for (const auto& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("pure state amplitude is not finite");
  }
  const double n = vector_norm(amplitudes_);
  if (std::abs(n - 1.0) > 1e-10) {
    throw InvalidArgument("pure state norm is " + std::to_string(n) + ", expected 1");
  }
}

PureState two_qubit_schmidt_state(double theta) {
  return PureState({std::cos(theta), 0.0, 0.0, std::sin(theta)});
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  if (!m_.is_square() || m_.rows() == 0) throw DimensionMismatch("density matrix must be square");
  if (!is_hermitian(m_, 1e-10)) throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(m_.trace() - cplx(1.0)) > 1e-10) throw InvalidArgument("density matrix trace != 1");
  if (!is_psd(m_, kLogicalTol)) throw InvalidArgument("density matrix is not PSD");
}

DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw InvalidArgument("visibility must lie in [0, 1]");
  const auto d = static_cast<double>(rho.dim());
  return DensityMatrix(visibility * rho.matrix() +
                       ((1.0 - visibility) / d) * CMatrix::identity(rho.dim()));
}

DichotomicMeasurement DichotomicMeasurement::from_projector(const CMatrix& projector0, int label) {
  if (!projector0.is_square()) throw DimensionMismatch("projector must be square");
  if (label != 0 && label != 1) throw InvalidArgument("setting label must be 0 or 1");
  if (!is_hermitian(projector0, kLogicalTol)) throw InvalidArgument("projector is not Hermitian");
  if (max_abs_diff(projector0 * projector0, projector0) > kLogicalTol)
    throw InvalidArgument("projector is not idempotent");
  CMatrix p1 = CMatrix::identity(projector0.rows()) - projector0;
  return DichotomicMeasurement(projector0, std::move(p1), label);
}

DichotomicMeasurement DichotomicMeasurement::from_observable(const CMatrix& observable, int label) {
  if (!observable.is_square()) throw DimensionMismatch("observable must be square");
  const auto id = CMatrix::identity(observable.rows());
  return from_projector(0.5 * (id + observable), label);
}

DichotomicMeasurement DichotomicMeasurement::qubit(double nx, double ny, double nz, int label) {
  const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (std::abs(n - 1.0) > 1e-10) throw InvalidArgument("Bloch vector must have unit length");
  return from_observable(pauli::along(nx, ny, nz), label);
}

MeasurementPair bob_mub_settings() {
  return {DichotomicMeasurement::qubit(0, 0, 1, 0), DichotomicMeasurement::qubit(1, 0, 0, 1)};
}

Assemblage::Assemblage(std::array<CMatrix, 4> elements, double tol)
    : elements_(std::move(elements)) {
  for (const auto& e : elements_) {
    if (e.rows() != kBobDim || e.cols() != kBobDim)
      throw MalformedInput("assemblage elements must be 2x2");
    if (!is_hermitian(e, tol)) throw MalformedInput("assemblage element is not Hermitian");
    if (!is_psd(e, tol)) throw MalformedInput("assemblage element is not PSD");
  }
  const CMatrix rho0 = element(0, 0) + element(1, 0);
  const CMatrix rho1 = element(0, 1) + element(1, 1);
  if (max_abs_diff(rho0, rho1) > tol)
    throw MalformedInput("assemblage violates no-signalling: sigma_{0|0}+sigma_{1|0} != "
                         "sigma_{0|1}+sigma_{1|1}");
  for (const auto* r : {&rho0, &rho1}) {
    if (std::abs(r->trace().real() - 1.0) > tol)
      throw MalformedInput("assemblage is not normalized");
  }
}

CMatrix Assemblage::bob_state() const {
  return 0.5 * (element(0, 0) + element(1, 0) + element(0, 1) + element(1, 1));
}

Assemblage Assemblage::mix(const Assemblage& a, const Assemblage& b, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidArgument("mixing weight must lie in [0, 1]");
  std::array<CMatrix, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = mu * a.elements_[i] + (1.0 - mu) * b.elements_[i];
  return Assemblage(std::move(out));
}

CorrelationTable::CorrelationTable(std::array<double, 16> probabilities,
                                   std::uint64_t shots_per_setting, double tol)
    : p_(probabilities), shots_(shots_per_setting) {
  for (double v : p_) {
    if (!std::isfinite(v) || v < -tol || v > 1.0 + tol)
      throw MalformedInput("probability outside [0, 1]");
  }
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double s = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) s += p(a, b, x, y);
      if (std::abs(s - 1.0) > tol)
        throw MalformedInput("probabilities for setting (" + std::to_string(x) + "," +
                             std::to_string(y) + ") sum to " + std::to_string(s));
    }
  const double ns_tol = is_empirical() ? std::max(tol, empirical_signalling_tolerance(shots_)) : tol;
  const double sig = signalling();
  if (sig > ns_tol) {
    throw MalformedInput("table violates no-signalling by " + std::to_string(sig));
  }
}

double CorrelationTable::signalling() const {
  double worst = 0.0;
  for (int k = 0; k < 2; ++k) {
    for (int s = 0; s < 2; ++s) {
      // Alice's marginal must not depend on Bob's setting, and vice versa.
      worst = std::max(worst, std::abs(alice_marginal(k, s, 0) - alice_marginal(k, s, 1)));
      worst = std::max(worst, std::abs(bob_marginal(k, 0, s) - bob_marginal(k, 1, s)));
    }
  }
  return worst;
}

double CorrelationTable::empirical_signalling_tolerance(std::uint64_t shots) {
  if (shots == 0) return kLogicalTol;
  return 6.0 * std::sqrt(0.5 / static_cast<double>(shots));
}

Assemblage assemblage_from_state(const DensityMatrix& rho, const MeasurementPair& alice,
                                 std::size_t dimA) {
  if (rho.dim() != dimA * kBobDim)
    throw DimensionMismatch("state dimension " + std::to_string(rho.dim()) +
                            " does not match dimA * 2 = " + std::to_string(dimA * kBobDim));
  std::array<CMatrix, 4> out;
  const auto idB = CMatrix::identity(kBobDim);
  for (int x = 0; x < 2; ++x) {
    if (alice[x].dim() != dimA) throw DimensionMismatch("Alice measurement dimension");
    for (int a = 0; a < 2; ++a) {
      const CMatrix op = kron(alice[x].projector(a), idB) * rho.matrix();
      out[Assemblage::index(a, x)] = partial_trace_first(op, dimA, kBobDim).hermitize();
    }
  }
  return Assemblage(std::move(out));
}

CorrelationTable correlations_from_assemblage(const Assemblage& assemblage,
                                              const MeasurementPair& bob) {
  std::array<double, 16> p{};
  for (int y = 0; y < 2; ++y) {
    if (bob[y].dim() != kBobDim) throw DimensionMismatch("Bob's measurements must act on a qubit");
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const double v = (bob[y].projector(b) * assemblage.element(a, x)).trace().real();
          // Clamp rounding noise below zero.
          p[CorrelationTable::index(a, b, x, y)] = std::max(0.0, v);
        }
  return CorrelationTable(p);
}

double correlator(const CorrelationTable& table, int x, int y) {
  double c = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) c += ((a ^ b) ? -1.0 : 1.0) * table.p(a, b, x, y);
  return std::clamp(c, -1.0, 1.0);
}

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CorrelationTable sample_counts(const CorrelationTable& table, std::uint64_t shots_per_setting,
                               std::uint64_t seed) {
  if (shots_per_setting == 0) throw InvalidArgument("shots_per_setting must be >= 1");
  if (shots_per_setting >= (std::uint64_t{1} << 40)) throw InvalidArgument("too many shots");
  std::array<double, 16> freq{};
  const double inv = 1.0 / static_cast<double>(shots_per_setting);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      std::array<double, 4> cumulative{};
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) {
        acc += table.p(k >> 1, k & 1, x, y);
        cumulative[k] = acc;
      }
      std::array<std::uint64_t, 4> counts{};
      const std::uint64_t stream = static_cast<std::uint64_t>(2 * x + y) << 40;
      for (std::uint64_t n = 0; n < shots_per_setting; ++n) {
        const double u = static_cast<double>(splitmix64_at(seed, stream + n) >> 11) * 0x1.0p-53;
        int k = 0;
        while (k < 3 && u >= cumulative[k]) ++k;
        // Rounding in the cumulative sum must not select an impossible outcome.
        while (k > 0 && table.p(k >> 1, k & 1, x, y) == 0.0) --k;
        ++counts[k];
      }
      for (int k = 0; k < 4; ++k)
        freq[CorrelationTable::index(k >> 1, k & 1, x, y)] = static_cast<double>(counts[k]) * inv;
    }
  return CorrelationTable(freq, shots_per_setting);
}

}  // namespace steercert

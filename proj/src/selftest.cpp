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

#include "steercert/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steercert/errors.hpp"
#include "steercert/inequalities.hpp"

namespace steercert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxCffw = 2.0 * std::numbers::sqrt2;
constexpr double kDefaultFgiTol = 1e-6;

double pow4(double v) { return (v * v) * (v * v); }

// Same formula as cffw_closed_form, without the domain check.
double cffw_value(double t) {
  const double s2 = pow4(std::sin(2.0 * t));
  return std::sqrt(4.0 * pow4(std::sin(t)) + s2) + std::sqrt(s2 + 4.0 * pow4(std::cos(t)));
}

double bisect_theta(double p) {
  double lo = 0.0, hi = kPi / 4.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cffw_value(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// The certified-theta estimator on raw frequencies, for the delta method.
double theta_estimate(const std::array<double, 16>& p, CertificationRoute route) {
  auto at = [&](int a, int b, int x, int y) { return p[CorrelationTable::index(a, b, x, y)]; };
  if (route == CertificationRoute::e) {
    const double c00 = at(0, 0, 0, 0) + at(1, 1, 0, 0);
    const double c11 = at(0, 0, 1, 1) + at(1, 1, 1, 1);
    const double e = std::clamp(std::min(c00, c11), 0.5, 1.0);
    return 0.5 * std::asin(std::sqrt(2.0 * e - 1.0));
  }
  auto corr = [&](int x, int y) {
    return at(0, 0, x, y) + at(1, 1, x, y) - at(0, 1, x, y) - at(1, 0, x, y);
  };
  const double value = std::hypot(corr(0, 0) + corr(1, 0), corr(0, 1) + corr(1, 1)) +
                       std::hypot(corr(0, 0) - corr(1, 0), corr(0, 1) - corr(1, 1));
  return bisect_theta(std::clamp(value, 2.0, kMaxCffw));
}

}  // namespace

Assemblage CanonicalScenario::assemblage() const { return noisy_assemblage(1.0); }

CorrelationTable CanonicalScenario::table() const { return noisy_table(1.0); }

Assemblage CanonicalScenario::noisy_assemblage(double visibility) const {
  const DensityMatrix rho = mix_with_white_noise(DensityMatrix(state), visibility);
  return assemblage_from_state(rho, alice, 2);
}

CorrelationTable CanonicalScenario::noisy_table(double visibility) const {
  return correlations_from_assemblage(noisy_assemblage(visibility), bob);
}

std::array<std::array<double, 3>, 2> canonical_alice_bloch(double theta) {
  return {{{0.0, 0.0, 1.0}, {std::sin(2.0 * theta), 0.0, std::cos(2.0 * theta)}}};
}

CanonicalScenario canonical_scenario(double theta) {
  if (!(theta > 0.0 && theta < kPi / 2.0))
    throw InvalidArgument("canonical scenario requires 0 < theta < pi/2");
  const auto n = canonical_alice_bloch(theta);
  return CanonicalScenario{
      theta,
      two_qubit_schmidt_state(theta),
      {DichotomicMeasurement::qubit(n[0][0], n[0][1], n[0][2], 0),
       DichotomicMeasurement::qubit(n[1][0], n[1][1], n[1][2], 1)},
      bob_mub_settings(),
  };
}

double cffw_closed_form(double theta) {
  if (!(theta >= 0.0 && theta <= kPi / 2.0))
    throw InvalidArgument("cffw_closed_form requires 0 <= theta <= pi/2");
  return cffw_value(theta);
}

double theta_from_cffw(double p, double tol) {
  if (!(p >= 2.0 - tol && p <= kMaxCffw + tol))
    throw InvalidArgument("CFFW value " + std::to_string(p) + " outside [2, 2 sqrt 2]");
  if (p >= kMaxCffw) return kPi / 4.0;
  if (p <= 2.0) return 0.0;
  return bisect_theta(p);
}

double concurrence_from_cffw(double p, double tol) {
  return std::clamp(std::sin(2.0 * theta_from_cffw(p, tol)), 0.0, 1.0);
}

double concurrence_from_e(double e, double tol) {
  if (!(e >= 0.5 - tol))
    throw Inconsistent("E = " + std::to_string(e) + " is below 1/2");
  if (e > 1.0 + tol) throw Inconsistent("E = " + std::to_string(e) + " exceeds 1");
  return std::clamp(std::sqrt(std::max(0.0, 2.0 * e - 1.0)), 0.0, 1.0);
}

const char* to_string(CertificationRoute route) {
  return route == CertificationRoute::cffw ? "CFFW" : "E";
}

CertificationRoute route_from_string(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  if (s == "CFFW") return CertificationRoute::cffw;
  if (s == "E") return CertificationRoute::e;
  throw InvalidArgument("unknown certification route '" + name + "'");
}

double fgi_standard_error(const CorrelationTable& table) {
  if (!table.is_empirical()) return 0.0;
  const auto v = fgi(table);
  const auto shots = static_cast<double>(table.shots_per_setting());
  double var = 0.0;
  for (int s = 0; s < 2; ++s) {
    const int a = static_cast<int>(v.witness_detail.at(s == 0 ? "a0" : "a1"));
    const int b = static_cast<int>(v.witness_detail.at(s == 0 ? "b0" : "b1"));
    const double pc = conditional_probability(table, a, b, s, s);
    const double n = shots * table.alice_marginal(a, s, s);
    var += pc * (1.0 - pc) / n;
  }
  return std::sqrt(var);
}

CertificationReport certify(const CorrelationTable& table, const CertifyOptions& options) {
  CertificationReport report;
  report.route = options.route;
  const double fgi_tol =
      options.fgi_tol.value_or(table.is_empirical()
                                   ? std::max(kDefaultFgiTol, 3.0 * fgi_standard_error(table))
                                   : kDefaultFgiTol);
  report.tolerances["fgi_tol"] = fgi_tol;
  report.tolerances["inversion_tol"] = options.inversion_tol;

  report.fgi_value = fgi(table).value;
  report.fgi_maximal = report.fgi_value >= kFgiAlgebraicMax - fgi_tol;
  report.certified = report.fgi_maximal;
  if (!report.certified) return report;

  double concurrence = 0.0;
  if (options.route == CertificationRoute::cffw) {
    const double p = cffw(table).value;
    report.witness_value = p;
    if (!(p >= 2.0 - options.inversion_tol && p <= kMaxCffw + options.inversion_tol)) {
      throw Inconsistent("maximal FGI with CFFW value " + std::to_string(p) +
                         " outside [2, 2 sqrt 2]");
    }
    const double theta = theta_from_cffw(std::clamp(p, 2.0, kMaxCffw), options.inversion_tol);
    report.theta = theta;
    concurrence = std::sin(2.0 * theta);
  } else {
    const double e = e_quantity(table);
    report.witness_value = 2.0 * e - 1.0;
    concurrence = concurrence_from_e(e, options.inversion_tol);
    report.theta = 0.5 * std::asin(concurrence);
  }
  report.concurrence = concurrence;
  report.alice_observables = canonical_alice_bloch(*report.theta);
  return report;
}

double theta_standard_error(const CorrelationTable& table, CertificationRoute route) {
  if (!table.is_empirical()) throw InvalidArgument("standard error needs an empirical table");
  std::array<double, 16> p;
  std::copy(table.entries().begin(), table.entries().end(), p.begin());
  constexpr double h = 1e-6;
  std::array<double, 16> grad{};
  for (std::size_t k = 0; k < 16; ++k) {
    auto up = p, down = p;
    up[k] += h;
    down[k] -= h;
    grad[k] = (theta_estimate(up, route) - theta_estimate(down, route)) / (2.0 * h);
  }
  double var = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double mean = 0.0, second = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const std::size_t k = CorrelationTable::index(a, b, x, y);
          mean += grad[k] * p[k];
          second += grad[k] * grad[k] * p[k];
        }
      var += second - mean * mean;
    }
  return std::sqrt(std::max(0.0, var) / static_cast<double>(table.shots_per_setting()));
}

PureState block_embedded_state(std::span<const double> weights, double theta) {
  if (weights.empty()) throw InvalidArgument("at least one block is required");
  double total = 0.0;
  for (double q : weights) {
    if (!(q >= 0.0) || !std::isfinite(q)) throw InvalidArgument("block weights must be >= 0");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvalidArgument("block weights must sum to 1");
  const std::size_t dimA = 2 * weights.size();
  CVector amp(dimA * kBobDim, 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double s = std::sqrt(weights[i]);
    amp[(2 * i) * kBobDim + 0] = s * std::cos(theta);
    amp[(2 * i + 1) * kBobDim + 1] = s * std::sin(theta);
  }
  // Renormalize away the rounding left in the weights.
  const double n = vector_norm(amp);
  for (auto& z : amp) z /= n;
  return PureState(std::move(amp));
}

IsometryCheck verify_isometry(const PureState& state, double theta) {
  constexpr double kStructTol = 1e-9;
  if (state.dim() % 4 != 0 || state.dim() == 0)
    throw InvalidArgument("state is not on C^(2n) (x) C^2");
  const std::size_t dimA = state.dim() / kBobDim;
  const std::size_t blocks = dimA / 2;
  const auto psi = state.amplitudes();
  const double c = std::cos(theta), s = std::sin(theta);

  IsometryCheck check;
  check.dimA = dimA;
  check.theta = theta;
  for (std::size_t k = 0; k < blocks; ++k) {
    const cplx even0 = psi[(2 * k) * 2 + 0], even1 = psi[(2 * k) * 2 + 1];
    const cplx odd0 = psi[(2 * k + 1) * 2 + 0], odd1 = psi[(2 * k + 1) * 2 + 1];
    if (std::abs(even1) > kStructTol || std::abs(odd0) > kStructTol)
      throw InvalidArgument("amplitude outside the block support in block " + std::to_string(k));
    if (std::abs(even0 * s - odd1 * c) > kStructTol)
      throw InvalidArgument("block " + std::to_string(k) + " does not match theta");
    check.block_weights.push_back(std::norm(even0) + std::norm(odd1));
  }

  // Isometry on A (x) A', completed to a permutation:
  //   |2k,0> -> |2k,0>, |2k+1,0> -> |2k,1>, |2k,1> -> |2k+1,0>, |2k+1,1> -> |2k+1,1>
  const std::size_t dimAA = 2 * dimA;
  CMatrix phi(dimAA, dimAA);
  for (std::size_t k = 0; k < blocks; ++k) {
    const std::size_t e = 2 * k, o = 2 * k + 1;
    phi(e * 2 + 0, e * 2 + 0) = 1.0;
    phi(e * 2 + 1, o * 2 + 0) = 1.0;
    phi(o * 2 + 0, e * 2 + 1) = 1.0;
    phi(o * 2 + 1, o * 2 + 1) = 1.0;
  }

  // |psi>_AB |0>_A' in the A (x) A' (x) B ordering.
  CVector input(dimAA * kBobDim, 0.0);
  for (std::size_t i = 0; i < dimA; ++i)
    for (std::size_t b = 0; b < kBobDim; ++b) input[(i * 2 + 0) * kBobDim + b] = psi[i * kBobDim + b];
  const CVector out = kron(phi, CMatrix::identity(kBobDim)) * input;

  // Reshape across A : A'B.
  CMatrix r(dimA, 4, out);
  const auto eig = eig_hermitian((r * r.adjoint()).hermitize());
  CVector junk(dimA);
  for (std::size_t i = 0; i < dimA; ++i) junk[i] = eig.eigenvectors(i, 0);
  const CVector target = kron(std::span<const cplx>(junk), two_qubit_schmidt_state(theta).amplitudes());
  check.fidelity = std::clamp(std::norm(inner(target, out)), 0.0, 1.0);
  check.junk_state = PureState(junk);
  return check;
}

}  // namespace steercert

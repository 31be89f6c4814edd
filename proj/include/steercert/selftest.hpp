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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steercert/scenario.hpp"

namespace steercert {

/// cos(theta)|00> + sin(theta)|11> with the measurements that make the
/// fine-grained inequality reach 2:
///   Bob:   B0 = sigma_z, B1 = sigma_x
///   Alice: A0 = sigma_z, A1 = cos(2 theta) sigma_z + sin(2 theta) sigma_x
struct CanonicalScenario {
  double theta = 0.0;
  PureState state;
  MeasurementPair alice;
  MeasurementPair bob;

  Assemblage assemblage() const;
  CorrelationTable table() const;
  // Same measurements on v |psi><psi| + (1 - v) I/4.
  Assemblage noisy_assemblage(double visibility) const;
  CorrelationTable noisy_table(double visibility) const;
};

/// Throws InvalidArgument unless 0 < theta < pi/2.
CanonicalScenario canonical_scenario(double theta);

/// Bloch vectors of Alice's canonical observables for a given theta.
std::array<std::array<double, 3>, 2> canonical_alice_bloch(double theta);

/// CFFW value of the canonical family:
///   sqrt(4 sin^4 t + sin^4 2t) + sqrt(sin^4 2t + 4 cos^4 t).
/// Throws InvalidArgument outside [0, pi/2].
double cffw_closed_form(double theta);

/// Inverts cffw_closed_form by bisection on [0, pi/4]. Throws
/// InvalidArgument if p lies outside [2 - tol, 2 sqrt 2 + tol].
double theta_from_cffw(double p, double tol = 1e-9);
double concurrence_from_cffw(double p, double tol = 1e-9);

/// C = sqrt(2e - 1), clamped to [0, 1]. Throws Inconsistent if e < 0.5 - tol.
double concurrence_from_e(double e, double tol = 1e-9);

enum class CertificationRoute { cffw, e };

const char* to_string(CertificationRoute route);
CertificationRoute route_from_string(const std::string& name);

struct CertifyOptions {
  CertificationRoute route = CertificationRoute::cffw;
  // Unset: 1e-6 for exact tables, three standard errors (floored at 1e-6)
  // for empirical ones.
  std::optional<double> fgi_tol;
  // Slack accepted when inverting a witness that sits marginally outside
  // its range.
  double inversion_tol = 1e-9;
};

/// Outcome of the self-test. Witness fields are empty when not certified.
struct CertificationReport {
  double fgi_value = 0.0;
  bool fgi_maximal = false;
  CertificationRoute route = CertificationRoute::cffw;
  std::optional<double> witness_value;  // CFFW p, or 2E - 1
  std::optional<double> concurrence;
  std::optional<double> theta;          // representative in (0, pi/4]
  bool certified = false;
  // Canonical observables consistent with the certified theta.
  std::optional<std::array<std::array<double, 3>, 2>> alice_observables;
  std::map<std::string, double> tolerances;
};

/// Throws Inconsistent if the FGI is maximal but the chosen witness lies
/// outside the range reachable by the canonical family.
CertificationReport certify(const CorrelationTable& table, const CertifyOptions& options = {});

/// Standard error of the FGI value of an empirical table, from the
/// binomial spread of the two maximizing conditional frequencies. 0 for
/// exact tables.
double fgi_standard_error(const CorrelationTable& table);

/// Delta-method standard error of the certified theta: numerical gradient
/// of the estimator with respect to the 16 frequencies, contracted with
/// the multinomial covariance of each setting pair. Throws InvalidArgument
/// for exact tables.
double theta_standard_error(const CorrelationTable& table, CertificationRoute route);

/// Alice: C^(2 n), Bob: C^2. Block i carries sqrt(q_i) (cos t |2i,0> +
/// sin t |2i+1,1>). Throws InvalidArgument for invalid weights.
PureState block_embedded_state(std::span<const double> weights, double theta);

struct IsometryCheck {
  std::size_t dimA = 0;
  std::vector<double> block_weights;
  double theta = 0.0;
  double fidelity = 0.0;
  PureState junk_state{CVector{1.0}};
};

/// Appends an ancilla |0>_A' to Alice, applies the local isometry
///   |2k,0> -> |2k,0>,  |2k+1,0> -> |2k,1>
/// and compares with |junk>_A (x) |psi(theta)>_A'B, the junk state being
/// the top left singular vector of the amplitudes reshaped across the
/// A : A'B cut. Throws InvalidArgument if the state is not block embedded
/// with this theta.
IsometryCheck verify_isometry(const PureState& state, double theta);

}  // namespace steercert

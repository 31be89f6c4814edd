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

#include <map>
#include <string>

#include "steercert/scenario.hpp"

namespace steercert {

inline constexpr double kViolationTol = 1e-7;

// Local-hidden-state bounds.
inline constexpr double kLinearBound = 1.4142135623730950488;     // sqrt(2)
inline constexpr double kCffwBound = 2.0;
inline constexpr double kFgiBound = 1.7071067811865475244;        // 1 + 1/sqrt(2)
inline constexpr double kFgiAlgebraicMax = 2.0;

/// Value of a steering functional together with its LHS bound.
struct SteeringValue {
  double value = 0.0;
  double bound = 0.0;
  bool violated = false;
  // Free-form details, e.g. the maximizing FGI outcome pairing and the
  // tolerance used for `violated`.
  std::map<std::string, double> witness_detail;
};

/// <A0 B0> + <A1 B1>, assuming B0 = sigma_z and B1 = sigma_x.
SteeringValue linear_si(const CorrelationTable& table, double tol = kViolationTol);

/// sqrt(<(A0+A1)B0>^2 + <(A0+A1)B1>^2) + sqrt(<(A0-A1)B0>^2 + <(A0-A1)B1>^2).
SteeringValue cffw(const CorrelationTable& table, double tol = kViolationTol);

/// Fine-grained inequality P(b0|a0; x=y=0) + P(b1|a1; x=y=1), maximized over
/// the 16 outcome pairings. Pairings whose Alice marginal is below 1e-12 are
/// skipped; throws MalformedInput when a setting has no usable outcome.
/// witness_detail holds a0, b0, a1, b1 of the maximizer.
SteeringValue fgi(const CorrelationTable& table, double tol = kViolationTol);

/// Conditional probability P(b | a) for the setting pair (x, y).
double conditional_probability(const CorrelationTable& table, int a, int b, int x, int y);

/// p(00|xy) + p(11|xy).
double mutual_predictability(const CorrelationTable& table, int x, int y);

/// min(C_{A0B0}, C_{A1B1}).
double e_quantity(const CorrelationTable& table);

}  // namespace steercert

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

#include "steercert/scenario.hpp"

namespace steercert {

/// One of the four deterministic response functions a = f(x).
struct DeterministicStrategy {
  std::array<int, 2> responses{};

  int response(int x) const { return responses[static_cast<std::size_t>(x)]; }
  // D(a|x) in {0, 1}.
  double weight(int a, int x) const { return response(x) == a ? 1.0 : 0.0; }

  // Strategy lambda = 2 * f(0) + f(1).
  static std::array<DeterministicStrategy, 4> all();
};

enum class SdpStatus { optimal, infeasible, max_iterations };

const char* to_string(SdpStatus status);

struct SdpOptions {
  double tol = 1e-6;
  int max_iterations = 50000;
};

/// Result of an LHS feasibility or steerable-weight solve.
///
/// hidden_states[lambda] is the subnormalized state p(lambda) rho_lambda
/// attached to DeterministicStrategy::all()[lambda]; always exactly PSD.
/// `residual` is the largest entrywise mismatch of the equality (or, for
/// the steerable weight, slack) constraints at the returned point.
struct SdpSolution {
  SdpStatus status = SdpStatus::max_iterations;
  double objective = 0.0;
  std::array<CMatrix, 4> hidden_states;
  double residual = 0.0;
  int iterations = 0;
};

/// Decides whether sigma_{a|x} = sum_lambda D_lambda(a|x) sigma_lambda with
/// sigma_lambda >= 0. status is optimal when a model within `tol` was found,
/// infeasible when a separating certificate was found, max_iterations
/// otherwise. objective = sum_lambda Tr sigma_lambda.
SdpSolution lhs_feasibility(const Assemblage& assemblage, const SdpOptions& options = {});

/// SW = 1 - max sum_lambda Tr sigma_lambda subject to
/// sigma_{a|x} - sum_lambda D_lambda(a|x) sigma_lambda >= 0 and
/// sigma_lambda >= 0. Bisection on the objective; each probe is a
/// feasibility projection. max_iterations is reported when some probe was
/// inconclusive; the objective is then an upper bound up to `tol`.
SdpSolution steerable_weight(const Assemblage& assemblage, const SdpOptions& options = {});

/// Independent check by nonnegative least squares over deterministic
/// strategies times `bloch_grid` pure hidden states on the Bloch sphere.
/// true certifies an LHS model up to discretization (entrywise residual
/// <= 1e-3); false is inconclusive. Throws InvalidArgument if bloch_grid < 50.
bool brute_force_lhs_oracle(const Assemblage& assemblage, int bloch_grid);

/// Assemblage reconstructed from a table measured with Bob's sigma_z /
/// sigma_x settings: the sigma_y component of each element is zero.
Assemblage xz_assemblage_from_correlations(const CorrelationTable& table);

/// Unbiased assemblage carrying only the correlators of a sigma_z / sigma_x
/// table: sigma_{a|x} = (I + (-1)^a (<A_x B_1> sigma_x + <A_x B_0> sigma_z)) / 4.
/// The correlators admit an LHS model iff this assemblage does: averaging
/// any LHS model with its outcome-flipped, Bloch-inverted copy and its
/// complex conjugate yields a model for it.
Assemblage correlator_assemblage(const CorrelationTable& table);

}  // namespace steercert

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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace steercert::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotCertified = 1;  // certify: FGI not maximal; lhs-check: steerable
inline constexpr int kExitMalformed = 2;     // bad arguments, unreadable or invalid input
inline constexpr int kExitInconclusive = 3;  // solver hit its iteration limit

enum class Command { simulate, certify, curve, steerable_weight, lhs_check };

struct RunConfig {
  Command command = Command::simulate;
  std::string input;   // "-" reads stdin
  std::string output;  // empty writes stdout only
  std::string assemblage_output;
  std::string assemblage_input;
  double theta = 0.78539816339744831;  // pi/4
  double visibility = 1.0;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 1;
  std::string route = "cffw";
  std::optional<double> fgi_tol;
  double sdp_tol = 1e-6;
  int max_iterations = 50000;
  int points = 101;
  int oracle_grid = 0;

  // Throws InvalidArgument for out-of-range parameters.
  void validate() const;
};

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_certify(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_curve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_steerable_weight(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_lhs_check(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and dispatches. Flags take
/// precedence over STEERCERT_SEED / STEERCERT_TOL, which take precedence
/// over defaults.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace steercert::cli

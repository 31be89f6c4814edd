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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "steercert/errors.hpp"
#include "steercert/inequalities.hpp"
#include "steercert/membership.hpp"
#include "steercert/selftest.hpp"
#include "steercert/serialization.hpp"

namespace steercert::cli {

namespace {

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

Assemblage load_or_build_assemblage(const RunConfig& config) {
  if (!config.assemblage_input.empty()) {
    return assemblage_from_json(read_json_file(config.assemblage_input));
  }
  return canonical_scenario(config.theta).noisy_assemblage(config.visibility);
}

json sdp_to_json(const SdpSolution& sol) {
  json hidden = json::array();
  for (const auto& h : sol.hidden_states) {
    json m = json::array();
    for (const auto& z : h.entries()) m.push_back({z.real(), z.imag()});
    hidden.push_back(m);
  }
  return json{{"status", to_string(sol.status)},
              {"objective", sol.objective},
              {"residual", sol.residual},
              {"iterations", sol.iterations},
              {"hidden_states", hidden}};
}

}  // namespace

void RunConfig::validate() const {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  if (assemblage_input.empty() && !(theta > 0.0 && theta < kHalfPi))
    throw InvalidArgument("--theta must lie in (0, pi/2)");
  if (!(visibility >= 0.0 && visibility <= 1.0)) throw InvalidArgument("--v must lie in [0, 1]");
  if (shots && *shots < 1) throw InvalidArgument("--shots must be >= 1");
  if (fgi_tol && !(*fgi_tol >= 0.0)) throw InvalidArgument("--fgi-tol must be >= 0");
  if (!(sdp_tol > 0.0)) throw InvalidArgument("--tol must be > 0");
  if (max_iterations < 1) throw InvalidArgument("--max-iterations must be >= 1");
  if (points < 2) throw InvalidArgument("--points must be >= 2");
  if (oracle_grid != 0 && oracle_grid < 50) throw InvalidArgument("--oracle-grid must be >= 50");
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto scenario = canonical_scenario(config.theta);
  const Assemblage assemblage = scenario.noisy_assemblage(config.visibility);
  CorrelationTable table = correlations_from_assemblage(assemblage, scenario.bob);
  json meta = {{"theta", config.theta},
               {"visibility", config.visibility},
               {"alice_observables", canonical_alice_bloch(config.theta)},
               {"bob_settings", {"sigma_z", "sigma_x"}}};
  if (config.shots) {
    table = sample_counts(table, *config.shots, config.seed);
    meta["seed"] = config.seed;
  }
  emit(table_to_json(table, meta).dump(2) + "\n", config.output, out);
  if (!config.assemblage_output.empty()) {
    write_text_file(config.assemblage_output,
                    assemblage_to_json(assemblage, {{"theta", config.theta},
                                                    {"visibility", config.visibility}})
                            .dump(2) +
                        "\n");
  }
  return kExitOk;
}

int cmd_certify(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream&) {
  json doc;
  if (config.input.empty() || config.input == "-") {
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw MalformedInput(std::string("stdin is not valid JSON: ") + e.what());
    }
  } else {
    doc = read_json_file(config.input);
  }
  const CorrelationTable table = table_from_json(doc);
  CertifyOptions options;
  options.route = route_from_string(config.route);
  options.fgi_tol = config.fgi_tol;
  const auto report = certify(table, options);
  const std::string text = report_to_json(report).dump(2) + "\n";
  out << text;
  if (!config.output.empty() && config.output != "-") write_text_file(config.output, text);
  return report.certified ? kExitOk : kExitNotCertified;
}

int cmd_curve(const RunConfig& config, std::ostream& out, std::ostream&) {
  std::ostringstream csv;
  csv << "concurrence,cffw\n";
  char line[64];
  for (int i = 0; i < config.points; ++i) {
    const double c = static_cast<double>(i) / (config.points - 1);
    const double p = cffw_closed_form(0.5 * std::asin(c));
    std::snprintf(line, sizeof line, "%.9g,%.9g\n", c, p);
    csv << line;
  }
  emit(csv.str(), config.output, out);
  return kExitOk;
}

int cmd_steerable_weight(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Assemblage assemblage = load_or_build_assemblage(config);
  const auto sol = steerable_weight(assemblage, {config.sdp_tol, config.max_iterations});
  json doc = sdp_to_json(sol);
  doc["steerable_weight"] = sol.objective;
  emit(doc.dump(2) + "\n", config.output, out);
  if (sol.status == SdpStatus::max_iterations) {
    err << "steerable-weight: iteration limit reached, residual " << sol.residual << "\n";
    return kExitInconclusive;
  }
  return kExitOk;
}

int cmd_lhs_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Assemblage assemblage = load_or_build_assemblage(config);
  const auto sol = lhs_feasibility(assemblage, {config.sdp_tol, config.max_iterations});
  json doc = sdp_to_json(sol);
  doc["lhs_model"] = sol.status == SdpStatus::optimal;
  if (config.oracle_grid > 0) {
    doc["oracle_grid"] = config.oracle_grid;
    doc["oracle_lhs_model"] = brute_force_lhs_oracle(assemblage, config.oracle_grid);
  }
  emit(doc.dump(2) + "\n", config.output, out);
  switch (sol.status) {
    case SdpStatus::optimal:
      return kExitOk;
    case SdpStatus::infeasible:
      return kExitNotCertified;
    case SdpStatus::max_iterations:
      err << "lhs-check: iteration limit reached, residual " << sol.residual << "\n";
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  RunConfig config;
  CLI::App app{"One-sided device-independent self-testing of two-qubit pure states"};
  app.require_subcommand(1);

  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--theta", config.theta, "Schmidt angle of cos t|00> + sin t|11>, in (0, pi/2)");
    sub->add_option("--v", config.visibility, "visibility v of v|psi><psi| + (1-v) I/4");
  };
  auto add_sdp = [&](CLI::App* sub) {
    sub->add_option("--assemblage", config.assemblage_input, "assemblage JSON file");
    sub->add_option("--tol", config.sdp_tol, "SDP residual tolerance")->envname("STEERCERT_TOL");
    sub->add_option("--max-iterations", config.max_iterations, "iterations per feasibility probe");
    sub->add_option("-o,--out", config.output, "output file (default stdout)");
    add_scenario(sub);
  };

  auto* simulate = app.add_subcommand("simulate", "write a correlation table for the canonical scenario");
  add_scenario(simulate);
  auto* exact = simulate->add_flag("--exact", "exact probabilities (default)");
  simulate->add_option("--shots", config.shots, "samples per setting pair")->excludes(exact);
  simulate->add_option("--seed", config.seed, "sampler seed")->envname("STEERCERT_SEED");
  simulate->add_option("-o,--out", config.output, "output file (default stdout)");
  simulate->add_option("--assemblage-out", config.assemblage_output, "also write the assemblage");

  auto* certify_cmd = app.add_subcommand("certify", "self-test a correlation table");
  certify_cmd->add_option("-i,--in", config.input, "table JSON file (default stdin)");
  certify_cmd->add_option("--route", config.route, "cffw or e");
  certify_cmd->add_option("--fgi-tol", config.fgi_tol, "FGI maximality tolerance")
      ->envname("STEERCERT_TOL");
  certify_cmd->add_option("-o,--out", config.output, "also write the report here");

  auto* curve = app.add_subcommand("curve", "CFFW value against concurrence as CSV");
  curve->add_option("--points", config.points, "number of grid points");
  curve->add_option("-o,--out", config.output, "output file (default stdout)");

  auto* sw = app.add_subcommand("steerable-weight", "steerable weight of an assemblage");
  add_sdp(sw);
  auto* lhs = app.add_subcommand("lhs-check", "decide whether an LHS model exists");
  add_sdp(lhs);
  lhs->add_option("--oracle-grid", config.oracle_grid, "also run the NNLS oracle on this grid");

  std::vector<std::string> argv_store{"steercert"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitMalformed;
  }

  try {
    if (simulate->parsed()) config.command = Command::simulate;
    if (certify_cmd->parsed()) config.command = Command::certify;
    if (curve->parsed()) config.command = Command::curve;
    if (sw->parsed()) config.command = Command::steerable_weight;
    if (lhs->parsed()) config.command = Command::lhs_check;
    config.validate();
    switch (config.command) {
      case Command::simulate:
        return cmd_simulate(config, out, err);
      case Command::certify:
        return cmd_certify(config, in, out, err);
      case Command::curve:
        return cmd_curve(config, out, err);
      case Command::steerable_weight:
        return cmd_steerable_weight(config, out, err);
      case Command::lhs_check:
        return cmd_lhs_check(config, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
  return kExitMalformed;
}

}  // namespace steercert::cli

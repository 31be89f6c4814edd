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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "steercert/inequalities.hpp"
#include "steercert/serialization.hpp"

using namespace steercert;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("steercert_cli_" + name);
}

// Restores an environment variable on scope exit.
struct EnvGuard {
  std::string name;
  explicit EnvGuard(std::string n, const std::string& value) : name(std::move(n)) {
    setenv(name.c_str(), value.c_str(), 1);
  }
  ~EnvGuard() { unsetenv(name.c_str()); }
};

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("simulate exact Bell table") {
  const auto r = run({"simulate", "--theta", "0.7854", "--exact"});
  REQUIRE(r.code == cli::kExitOk);
  const auto table = table_from_json(json::parse(r.out));
  CHECK(std::abs(table.p(0, 0, 0, 0) - 0.5) < 1e-4);
  CHECK_FALSE(table.is_empirical());
}

TEST_CASE("simulate with visibility scales the correlators") {
  const auto r = run({"simulate", "--theta", "0.7854", "--v", "0.5", "--exact"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(std::abs(correlator(table_from_json(json::parse(r.out)), 0, 0) - 0.5) < 1e-12);
}

TEST_CASE("sampled simulation is deterministic") {
  const auto a = temp("a.json"), b = temp("b.json");
  REQUIRE(run({"simulate", "--shots", "1000", "--seed", "7", "-o", a.string()}).code == 0);
  REQUIRE(run({"simulate", "--shots", "1000", "--seed", "7", "-o", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(table_from_json(json::parse(slurp(a))).shots_per_setting() == 1000);
  REQUIRE(run({"simulate", "--shots", "1000", "--seed", "8", "-o", b.string()}).code == 0);
  CHECK(slurp(a) != slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("environment seed is used unless a flag is given") {
  const auto flag = run({"simulate", "--shots", "500", "--seed", "11"}).out;
  const auto other = run({"simulate", "--shots", "500", "--seed", "12"}).out;
  EnvGuard env("STEERCERT_SEED", "11");
  CHECK(run({"simulate", "--shots", "500"}).out == flag);
  CHECK(run({"simulate", "--shots", "500", "--seed", "12"}).out == other);
}

TEST_CASE("environment tolerance is used unless a flag is given") {
  const auto table = run({"simulate", "--theta", fmt(kPi / 4), "--v", "0.99", "--exact"}).out;
  CHECK(run({"certify"}, table).code == cli::kExitNotCertified);
  EnvGuard env("STEERCERT_TOL", "0.02");
  CHECK(run({"certify"}, table).code == cli::kExitOk);
  CHECK(run({"certify", "--fgi-tol", "1e-6"}, table).code == cli::kExitNotCertified);
}

TEST_CASE("certify canonical table") {
  const auto table = run({"simulate", "--theta", fmt(kPi / 6), "--exact"}).out;
  const auto r = run({"certify"}, table);
  REQUIRE(r.code == cli::kExitOk);
  const auto report = json::parse(r.out);
  CHECK(std::abs(report.at("concurrence").get<double>() - 0.8660254) < 1e-7);
  CHECK(report.at("certified").get<bool>());
  CHECK(report.at("route").get<std::string>() == "CFFW");

  const auto e = run({"certify", "--route", "e"}, table);
  REQUIRE(e.code == cli::kExitOk);
  CHECK(std::abs(json::parse(e.out).at("concurrence").get<double>() - 0.8660254) < 1e-7);
}

TEST_CASE("certify Werner table is rejected") {
  const auto table = run({"simulate", "--theta", fmt(kPi / 4), "--v", "0.9", "--exact"}).out;
  const auto r = run({"certify"}, table);
  CHECK(r.code == cli::kExitNotCertified);
  CHECK_FALSE(json::parse(r.out).at("certified").get<bool>());
}

TEST_CASE("certify reads files and writes reports") {
  const auto in = temp("in.json"), out = temp("report.json");
  REQUIRE(run({"simulate", "--theta", "0.4", "--exact", "-o", in.string()}).code == 0);
  const auto r = run({"certify", "-i", in.string(), "-o", out.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(slurp(out) == r.out);
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST_CASE("malformed input exits with 2") {
  auto doc = table_to_json(canonical_scenario(0.5).table());
  // Shift 0.1 between Alice's outcomes at (x, y) = (0, 1) only: her
  // marginal now depends on Bob's setting.
  doc["p"]["0001"] = doc["p"]["0001"].get<double>() + 0.1;
  doc["p"]["1001"] = doc["p"]["1001"].get<double>() - 0.1;
  auto r = run({"certify"}, doc.dump());
  CHECK(r.code == cli::kExitMalformed);
  CHECK(r.err.find("no-signalling") != std::string::npos);
  CHECK(run({"certify"}, "{not json").code == cli::kExitMalformed);
  CHECK(run({"certify", "-i", temp("missing.json").string()}).code == cli::kExitMalformed);
  CHECK(run({"certify", "--route", "chsh"}, run({"simulate", "--exact"}).out).code == cli::kExitMalformed);
}

TEST_CASE("invalid arguments exit with 2") {
  CHECK(run({}).code == cli::kExitMalformed);
  CHECK(run({"frobnicate"}).code == cli::kExitMalformed);
  CHECK(run({"simulate", "--theta", "2"}).code == cli::kExitMalformed);
  CHECK(run({"simulate", "--v", "1.5"}).code == cli::kExitMalformed);
  CHECK(run({"simulate", "--shots", "0"}).code == cli::kExitMalformed);
  CHECK(run({"simulate", "--exact", "--shots", "10"}).code == cli::kExitMalformed);
  CHECK(run({"curve", "--points", "1"}).code == cli::kExitMalformed);
  CHECK(run({"lhs-check", "--oracle-grid", "10"}).code == cli::kExitMalformed);
}

TEST_CASE("curve") {
  const auto r = run({"curve", "--points", "101"});
  REQUIRE(r.code == cli::kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "concurrence,cffw");
  std::vector<std::pair<double, double>> rows;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  REQUIRE(rows.size() == 101);
  CHECK(rows.front().first == 0.0);
  CHECK(std::abs(rows.front().second - 2.0) < 1e-8);
  CHECK(rows.back().first == 1.0);
  CHECK(std::abs(rows.back().second - 2.8284271) < 1e-6);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].second > rows[i - 1].second);
}

TEST_CASE("steerable weight") {
  auto r = run({"steerable-weight", "--theta", fmt(kPi / 4)});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(std::abs(json::parse(r.out).at("steerable_weight").get<double>() - 1.0) < 1e-4);

  r = run({"steerable-weight", "--theta", fmt(kPi / 4), "--v", "0.72"});
  REQUIRE(r.code == cli::kExitOk);
  const double w = json::parse(r.out).at("steerable_weight").get<double>();
  CHECK(w > 0.0);
  CHECK(w < 1.0);

  std::mt19937_64 rng(71);
  const auto path = temp("separable.json");
  write_text_file(path.string(),
                  assemblage_to_json(assemblage_from_state(oracle::random_separable(rng, 2),
                                                           oracle::random_qubit_pair(rng), 2))
                      .dump());
  r = run({"steerable-weight", "--assemblage", path.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(std::abs(json::parse(r.out).at("steerable_weight").get<double>()) < 1e-4);
  std::filesystem::remove(path);
}

TEST_CASE("lhs-check exit codes") {
  CHECK(run({"lhs-check", "--theta", fmt(kPi / 4), "--v", "0.70"}).code == cli::kExitOk);
  CHECK(run({"lhs-check", "--theta", fmt(kPi / 4), "--v", "0.72"}).code == cli::kExitNotCertified);
  const auto r = run({"lhs-check", "--theta", fmt(kPi / 4), "--v", "0.72", "--max-iterations", "1"});
  CHECK(r.code == cli::kExitInconclusive);
  CHECK(r.err.find("iteration limit") != std::string::npos);
  const auto o = run({"lhs-check", "--v", "0.5", "--oracle-grid", "100"});
  CHECK(o.code == cli::kExitOk);
  CHECK(json::parse(o.out).at("oracle_lhs_model").get<bool>());
}

TEST_CASE("simulate writes an assemblage that parses back") {
  const auto path = temp("asm.json");
  REQUIRE(run({"simulate", "--theta", "0.3", "--assemblage-out", path.string()}).code == 0);
  const auto text = slurp(path);
  const auto doc = json::parse(text);
  const auto back = assemblage_from_json(doc);
  CHECK(assemblage_to_json(back, doc.at("meta")).dump(2) + "\n" == text);
  std::filesystem::remove(path);
}

TEST_CASE("property: emitted tables round-trip bit-identically") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"simulate", "--theta", "0.3", "--exact"},
           {"simulate", "--theta", "1.1", "--v", "0.8", "--shots", "777", "--seed", "3"}}) {
    const auto text = run(args).out;
    const auto doc = json::parse(text);
    CHECK(table_to_json(table_from_json(doc), doc.at("meta")).dump(2) + "\n" == text);
  }
}

TEST_CASE("property: simulate then certify recovers theta") {
  for (int i = 1; i <= 50; ++i) {
    const double t = (kPi / 4) * i / 50.0;
    const auto table = run({"simulate", "--theta", fmt(t), "--exact"}).out;
    for (const char* route : {"cffw", "e"}) {
      const auto r = run({"certify", "--route", route}, table);
      REQUIRE(r.code == cli::kExitOk);
      CHECK(std::abs(json::parse(r.out).at("theta").get<double>() - t) <= 1e-7);
    }
  }
}

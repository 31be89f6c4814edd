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
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "steercert/errors.hpp"
#include "steercert/serialization.hpp"

using namespace steercert;

TEST_CASE("table keys follow abxy") {
  const auto table = canonical_scenario(std::numbers::pi / 4).table();
  const auto doc = table_to_json(table);
  CHECK(doc.at("p").size() == 16);
  CHECK(doc.at("p").at("0000").get<double>() == table.p(0, 0, 0, 0));
  CHECK(doc.at("p").at("0110").get<double>() == table.p(0, 1, 1, 0));
  CHECK(doc.at("meta").is_object());
}

TEST_CASE("property: tables round-trip bit-identically") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    const auto rho = oracle::random_density(rng, 4, 1 + i % 4);
    auto table = correlations_from_assemblage(
        assemblage_from_state(rho, oracle::random_qubit_pair(rng), 2), bob_mub_settings());
    if (i % 2 == 1) table = sample_counts(table, 1000, i);
    const auto text = table_to_json(table, {{"i", i}}).dump();
    const auto back = table_from_json(json::parse(text));
    CHECK(back.shots_per_setting() == table.shots_per_setting());
    for (std::size_t k = 0; k < 16; ++k) CHECK(back.entries()[k] == table.entries()[k]);
    CHECK(table_to_json(back, {{"i", i}}).dump() == text);
  }
}

TEST_CASE("property: assemblages round-trip bit-identically") {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 100; ++i) {
    const auto rho = oracle::random_density(rng, 4, 1 + i % 4);
    const auto asm_ = assemblage_from_state(rho, oracle::random_qubit_pair(rng), 2);
    const auto text = assemblage_to_json(asm_).dump();
    const auto back = assemblage_from_json(json::parse(text));
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a) CHECK(back.element(a, x) == asm_.element(a, x));
    CHECK(assemblage_to_json(back).dump() == text);
  }
}

TEST_CASE("reports round-trip") {
  for (double t : {0.3, 0.7}) {
    CertifyOptions options;
    options.route = t < 0.5 ? CertificationRoute::e : CertificationRoute::cffw;
    const auto r = certify(canonical_scenario(t).table(), options);
    const auto text = report_to_json(r).dump();
    const auto back = report_from_json(json::parse(text));
    CHECK(back.certified == r.certified);
    CHECK(back.route == r.route);
    CHECK(*back.theta == *r.theta);
    CHECK(report_to_json(back).dump() == text);
  }
  const auto w = certify(canonical_scenario(0.7).noisy_table(0.9));
  const auto doc = report_to_json(w);
  CHECK(doc.at("theta").is_null());
  CHECK(doc.at("concurrence").is_null());
  CHECK(report_to_json(report_from_json(doc)) == doc);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(table_from_json(json::parse("{}")), MalformedInput);
  CHECK_THROWS_AS(table_from_json(json::parse(R"({"p": {"0000": 1}})")), MalformedInput);
  auto doc = table_to_json(canonical_scenario(0.5).table());
  doc["p"]["0000"] = "half";
  CHECK_THROWS_AS(table_from_json(doc), MalformedInput);
  doc = table_to_json(canonical_scenario(0.5).table());
  doc["p"]["0000"] = doc["p"]["0000"].get<double>() + 0.1;
  CHECK_THROWS_AS(table_from_json(doc), MalformedInput);
  CHECK_THROWS_AS(assemblage_from_json(json::parse(R"({"sigma": {}})")), MalformedInput);
  CHECK_THROWS_AS(report_from_json(json::parse("[]")), MalformedInput);
}

TEST_CASE("files") {
  const auto path = std::filesystem::temp_directory_path() / "steercert_serialization_test.json";
  const auto doc = table_to_json(canonical_scenario(0.5).table());
  write_text_file(path.string(), doc.dump());
  CHECK(read_json_file(path.string()) == doc);
  write_text_file(path.string(), "{not json");
  CHECK_THROWS_AS(read_json_file(path.string()), MalformedInput);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file(path.string()), MalformedInput);
}

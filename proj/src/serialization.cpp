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

#include "steercert/serialization.hpp"

#include <fstream>
#include <sstream>

#include "steercert/errors.hpp"

namespace steercert {

namespace {

std::string table_key(int a, int b, int x, int y) {
  return std::string{char('0' + a), char('0' + b), char('0' + x), char('0' + y)};
}

std::string sigma_key(int a, int x) { return std::string{char('0' + a), '|', char('0' + x)}; }

double number_at(const json& obj, const std::string& key) {
  if (!obj.contains(key)) throw MalformedInput("missing key '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw MalformedInput("value of '" + key + "' is not a number");
  return v.get<double>();
}

}  // namespace

json table_to_json(const CorrelationTable& table, const json& meta) {
  json p = json::object();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) p[table_key(a, b, x, y)] = table.p(a, b, x, y);
  json m = meta.is_object() ? meta : json::object();
  if (table.is_empirical()) m["shots"] = table.shots_per_setting();
  return json{{"p", p}, {"meta", m}};
}

CorrelationTable table_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("p") || !doc.at("p").is_object())
    throw MalformedInput("correlation table needs an object under key \"p\"");
  const auto& p = doc.at("p");
  if (p.size() != 16) throw MalformedInput("correlation table needs exactly 16 entries");
  std::array<double, 16> entries{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          entries[CorrelationTable::index(a, b, x, y)] = number_at(p, table_key(a, b, x, y));
  std::uint64_t shots = 0;
  if (doc.contains("meta") && doc.at("meta").is_object() && doc.at("meta").contains("shots")) {
    const auto& s = doc.at("meta").at("shots");
    if (!s.is_number_unsigned() || s.get<std::uint64_t>() == 0)
      throw MalformedInput("meta.shots must be a positive integer");
    shots = s.get<std::uint64_t>();
  }
  return CorrelationTable(entries, shots);
}

json assemblage_to_json(const Assemblage& assemblage, const json& meta) {
  json sigma = json::object();
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      json m = json::array();
      for (const auto& z : assemblage.element(a, x).entries()) m.push_back({z.real(), z.imag()});
      sigma[sigma_key(a, x)] = m;
    }
  return json{{"sigma", sigma}, {"meta", meta.is_object() ? meta : json::object()}};
}

Assemblage assemblage_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("sigma") || !doc.at("sigma").is_object())
    throw MalformedInput("assemblage needs an object under key \"sigma\"");
  std::array<CMatrix, 4> elements;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const auto key = sigma_key(a, x);
      const auto& sig = doc.at("sigma");
      if (!sig.contains(key)) throw MalformedInput("assemblage is missing \"" + key + "\"");
      const auto& arr = sig.at(key);
      if (!arr.is_array() || arr.size() != 4)
        throw MalformedInput("\"" + key + "\" must list 4 complex entries");
      std::vector<cplx> entries;
      for (const auto& z : arr) {
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
          throw MalformedInput("complex entries are [re, im] pairs");
        entries.emplace_back(z[0].get<double>(), z[1].get<double>());
      }
      try {
        elements[Assemblage::index(a, x)] = CMatrix(2, 2, std::move(entries));
      } catch (const Error& e) {
        throw MalformedInput(e.what());
      }
    }
  return Assemblage(std::move(elements));
}

json report_to_json(const CertificationReport& report) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json doc = {
      {"fgi_value", report.fgi_value},
      {"fgi_maximal", report.fgi_maximal},
      {"route", to_string(report.route)},
      {"witness_value", opt(report.witness_value)},
      {"concurrence", opt(report.concurrence)},
      {"theta", opt(report.theta)},
      {"certified", report.certified},
      {"tolerances", report.tolerances},
  };
  if (report.alice_observables) {
    doc["alice_observables"] = *report.alice_observables;
  } else {
    doc["alice_observables"] = nullptr;
  }
  return doc;
}

CertificationReport report_from_json(const json& doc) {
  if (!doc.is_object()) throw MalformedInput("report must be a JSON object");
  auto opt = [&](const char* key) -> std::optional<double> {
    if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
    return number_at(doc, key);
  };
  CertificationReport r;
  try {
    r.fgi_value = number_at(doc, "fgi_value");
    r.fgi_maximal = doc.at("fgi_maximal").get<bool>();
    r.route = route_from_string(doc.at("route").get<std::string>());
    r.witness_value = opt("witness_value");
    r.concurrence = opt("concurrence");
    r.theta = opt("theta");
    r.certified = doc.at("certified").get<bool>();
    r.tolerances = doc.at("tolerances").get<std::map<std::string, double>>();
    if (doc.contains("alice_observables") && !doc.at("alice_observables").is_null()) {
      r.alice_observables =
          doc.at("alice_observables").get<std::array<std::array<double, 3>, 2>>();
    }
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("invalid report: ") + e.what());
  }
  return r;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace steercert

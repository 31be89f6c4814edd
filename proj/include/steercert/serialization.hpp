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

#include <string>

#include "json.hpp"
#include "steercert/scenario.hpp"
#include "steercert/selftest.hpp"

namespace steercert {

using json = nlohmann::json;

// CorrelationTable:
//   {"p": {"0000": p(00|00), ..., "1111": p(11|11)}, "meta": {...}}
// Keys are "abxy". A positive integer meta.shots marks an empirical table.
json table_to_json(const CorrelationTable& table, const json& meta = json::object());
CorrelationTable table_from_json(const json& doc);

// Assemblage:
//   {"sigma": {"0|0": [[re,im],[re,im],[re,im],[re,im]], "1|0": ..., ...}}
// Each value is the row-major 2x2 matrix; keys are "a|x".
json assemblage_to_json(const Assemblage& assemblage, const json& meta = json::object());
Assemblage assemblage_from_json(const json& doc);

json report_to_json(const CertificationReport& report);
CertificationReport report_from_json(const json& doc);

// Throw MalformedInput on unreadable files or invalid JSON.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace steercert

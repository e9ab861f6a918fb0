/*
 * Copyright 2026 The ghk-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ghk/expected.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ghk/errors.hpp"

namespace ghk {

extern const char* const kBuiltinExpectedValues;

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Paper: return "PAPER";
    case Provenance::Trivial: return "TRIVIAL";
    case Provenance::Derived: return "DERIVED";
  }
  return "?";
}

double ExpectedValue::number() const {
  if (!value.is_number()) throw InvalidArgument("expected value is not a number: " + value.dump());
  return value.get<double>();
}

bool ExpectedValue::accepts(double computed) const {
  if (!std::isfinite(computed)) return false;
  const double v = number();
  if (comparison == "at_most") return computed <= v + tolerance;
  return std::abs(computed - v) <= tolerance;
}

ExpectedTable ExpectedTable::parse(const std::string& json_text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InconsistencyError(origin + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_object())
    throw InconsistencyError(origin + ": missing 'entries' object");
  ExpectedTable t;
  for (const auto& [key, entry] : doc["entries"].items()) {
    auto bad = [&](const std::string& why) { return InconsistencyError(origin + ": entry '" + key + "': " + why); };
    if (key.find('/') == std::string::npos) throw bad("key must be 'scenario/check'");
    if (!entry.is_object() || !entry.contains("value")) throw bad("missing value");
    ExpectedValue v;
    v.value = entry["value"];
    if (!entry.contains("provenance") || !entry["provenance"].is_string()) throw bad("missing provenance tag");
    const std::string tag = entry["provenance"];
    if (tag == "PAPER")
      v.provenance = Provenance::Paper;
    else if (tag == "TRIVIAL")
      v.provenance = Provenance::Trivial;
    else if (tag == "DERIVED")
      v.provenance = Provenance::Derived;
    else
      throw bad("unknown provenance tag '" + tag + "'");
    if (entry.contains("tolerance")) v.tolerance = entry["tolerance"].get<double>();
    if (entry.contains("oracle_command")) v.oracle_command = entry["oracle_command"].get<std::string>();
    if (v.provenance == Provenance::Derived && v.oracle_command.empty()) throw bad("DERIVED entry without oracle_command");
    if (entry.contains("comparison")) v.comparison = entry["comparison"].get<std::string>();
    if (v.comparison != "equal" && v.comparison != "at_most") throw bad("unknown comparison '" + v.comparison + "'");
    t.entries_.emplace(key, std::move(v));
  }
  return t;
}

ExpectedTable ExpectedTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open expected-values file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

const ExpectedTable& ExpectedTable::builtin() {
  static const ExpectedTable table = [] {
    if (const char* path = std::getenv("GHK_EXPECTED_VALUES"); path && *path) return load(path);
    return parse(kBuiltinExpectedValues, "built-in expected values");
  }();
  return table;
}

const ExpectedValue& ExpectedTable::at(const std::string& scenario, const std::string& check) const {
  auto it = entries_.find(scenario + "/" + check);
  if (it == entries_.end()) throw InconsistencyError("no expected value for '" + scenario + "/" + check + "'");
  return it->second;
}

bool ExpectedTable::contains(const std::string& scenario, const std::string& check) const {
  return entries_.count(scenario + "/" + check) != 0;
}

}  // namespace ghk

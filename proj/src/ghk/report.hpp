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
#pragma once

// Scenario reports: named checks of computed against expected values.

#include <string>
#include <vector>

#include "ghk/expected.hpp"
#include "json.hpp"

namespace ghk {

enum class Verdict { Pass, Fail, Report };
const char* to_string(Verdict v);

struct Check {
  std::string name;
  nlohmann::json computed;
  nlohmann::json expected;  // null for report-only checks
  double tolerance = 0.0;
  std::string provenance;   // PAPER, TRIVIAL, DERIVED; empty for report-only
  Verdict verdict = Verdict::Report;
};

struct ScenarioReport {
  std::string scenario;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<Check> checks;

  /// Pass iff no check failed; report-only checks never fail.
  bool passed() const;

  /// Exact check: passes iff `computed` equals the entry's value.
  void add_exact(const std::string& name, nlohmann::json computed, const ExpectedValue& e);
  /// Numeric check against a table entry.
  void add_expected(const std::string& name, double computed, const ExpectedValue& e);
  void add_report(const std::string& name, nlohmann::json computed);
};

nlohmann::json to_json(const ScenarioReport& r);

}  // namespace ghk

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
#include "ghk/report.hpp"

namespace ghk {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Report: return "report";
  }
  return "?";
}

bool ScenarioReport::passed() const {
  for (const auto& c : checks)
    if (c.verdict == Verdict::Fail) return false;
  return true;
}

void ScenarioReport::add_exact(const std::string& name, nlohmann::json computed, const ExpectedValue& e) {
  const bool holds = computed == e.value;
  checks.push_back({name, std::move(computed), e.value, 0.0, to_string(e.provenance), holds ? Verdict::Pass : Verdict::Fail});
}

void ScenarioReport::add_expected(const std::string& name, double computed, const ExpectedValue& e) {
  Check c;
  c.name = name;
  c.computed = computed;
  c.expected = e.comparison == "at_most" ? nlohmann::json{{"at_most", e.value}} : e.value;
  c.tolerance = e.tolerance;
  c.provenance = to_string(e.provenance);
  c.verdict = e.accepts(computed) ? Verdict::Pass : Verdict::Fail;
  checks.push_back(std::move(c));
}

void ScenarioReport::add_report(const std::string& name, nlohmann::json computed) {
  Check c;
  c.name = name;
  c.computed = std::move(computed);
  checks.push_back(std::move(c));
}

nlohmann::json to_json(const ScenarioReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"computed", c.computed},
                      {"expected", c.expected},
                      {"tolerance", c.tolerance},
                      {"provenance", c.provenance},
                      {"verdict", to_string(c.verdict)}});
  return {{"scenario", r.scenario}, {"inputs", r.inputs}, {"checks", checks}, {"verdict", r.passed() ? "pass" : "fail"}};
}

}  // namespace ghk

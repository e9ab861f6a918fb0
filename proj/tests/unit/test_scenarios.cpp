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
#include <algorithm>

#include "doctest.h"
#include "ghk/errors.hpp"
#include "ghk/scenarios.hpp"

using namespace ghk;
using nlohmann::json;

namespace {

const SymbolTable& symbols() {
  static const SymbolTable t = SymbolTable::defaults();
  return t;
}

ScenarioReport run(const std::string& id, json params = json::object()) {
  return run_scenario(id, params, ExpectedTable::builtin(), symbols());
}

const Check& check(const ScenarioReport& r, const std::string& name) {
  auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const Check& c) { return c.name == name; });
  REQUIRE_MESSAGE(it != r.checks.end(), name);
  return *it;
}

}  // namespace

TEST_CASE("skew example: both seminorms vanish exactly") {
  for (json c : {json::array({"1"}), json::array({"1", "1"}), json::array({"1", "-2/3"})}) {
    auto r = run("d0_dual", {{"c", c}});
    CHECK(r.passed());
    CHECK(check(r, "seminorm_f").computed == "0");
    CHECK(check(r, "seminorm_dual").computed == "0");
    CHECK(check(r, "census_mismatches").computed == 0);
  }
  auto empty = run("d0_dual", {{"c", json::array()}});
  CHECK(empty.passed());
  CHECK_THROWS_AS(run("d0_dual", {{"c", {"1", "1", "1", "1"}}}), PreconditionError);
}

TEST_CASE("key estimate symbolic cases") {
  for (auto [d, s] : {std::pair{1, 1}, std::pair{2, 0}, std::pair{1, 0}}) {
    auto r = run("key_estimate", {{"d", d}, {"s", s}});
    CHECK(r.passed());
    CHECK(check(r, "averaged_seminorm").computed == "0");
  }
  // e(x2) has nonzero third seminorm, so the hypothesis fails for d + s = 3.
  CHECK_THROWS_AS(run("key_estimate", {{"d", 2}, {"s", 1}}), PreconditionError);
  CHECK(run("key_estimate", {{"d", 2}, {"s", 1}, {"zero_function", true}}).passed());
  CHECK_THROWS_AS(run("key_estimate", {{"d", 3}, {"s", 0}}), PreconditionError);
}

TEST_CASE("key estimate truncated values are reported along H") {
  auto r = run("key_estimate", {{"mode", "truncated"}, {"H_list", {4, 8}}});
  CHECK(r.passed());
  // Away from the calibrated H the threshold is reported, not compared.
  CHECK(check(r, "truncated_at_max_H").verdict == Verdict::Report);
  CHECK_THROWS_AS(run("key_estimate", {{"mode", "truncated"}, {"H_list", {8, 4}}}), ConfigError);
}

TEST_CASE("counterexample masses are forced to one") {
  auto sq = run("squares_counterexample", {{"alpha", "sqrt(3) - 1"}, {"N", 10000}});
  CHECK(sq.passed());
  CHECK(check(sq, "mass_on_first_third").computed == 1.0);
  CHECK(run("squares_counterexample", {{"N", 0}}).passed());

  auto be = run("bad_enumeration");
  CHECK(be.passed());
  CHECK(check(be, "monotonicity_violations").computed == 0);
  CHECK(check(be, "mass_far_from_integers").computed == 1.0);
  CHECK(check(be, "linear_star_discrepancy").verdict == Verdict::Pass);
  CHECK(run("bad_enumeration", {{"ell", 1}, {"N", 2000}}).passed());
  CHECK_THROWS_AS(run("bad_enumeration", {{"ell", 4}}), PreconditionError);
}

TEST_CASE("seminorm laws on a short run") {
  auto r = run("seminorm_laws", {{"trials", 10}, {"N", 12}});
  CHECK(r.passed());
  CHECK(r.checks.size() == 5);
  CHECK(run("seminorm_laws", {{"trials", 0}}).passed());
  CHECK(run("seminorm_laws", {{"trials", 5}, {"inject_constant", true}}).passed());
  CHECK_THROWS_AS(run("seminorm_laws", {{"N", 65}}), PreconditionError);
}

TEST_CASE("lower lemma norms shrink") {
  auto r = run("lower_lemma", {{"s", 2}, {"H_list", {8, 32}}});
  CHECK(r.passed());
  auto norms = check(r, "norms").computed;
  CHECK(norms.size() == 2);
  CHECK(norms[1]["norm"].get<double>() < norms[0]["norm"].get<double>());

  auto one = run("lower_lemma", {{"s", 1}, {"H_list", {4, 8}}, {"constant_function", true}});
  for (const auto& v : check(one, "norms").computed) CHECK(v["norm"].get<double>() == doctest::Approx(1.0));
  CHECK(run("lower_lemma", {{"H_list", json::array()}}).passed());
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(run("seminorm_laws", {{"trails", 3}}), ConfigError);
  CHECK_THROWS_AS(run("seminorm_laws", {{"N", "32"}}), ConfigError);
  CHECK_THROWS_AS(run("no_such_scenario"), ConfigError);
  CHECK(scenario_names().size() == 9);
}

TEST_CASE("reports are deterministic") {
  auto a = to_json(run("seminorm_laws", {{"trials", 4}, {"seed", 9}})).dump();
  auto b = to_json(run("seminorm_laws", {{"trials", 4}, {"seed", 9}})).dump();
  CHECK(a == b);
  auto c = to_json(run("seminorm_laws", {{"trials", 4}, {"seed", 10}})).dump();
  CHECK(a != c);
}

TEST_CASE("weyl battery generator") {
  auto phases = weyl_battery_phases(24, 1);
  CHECK(phases.size() == 24);
  CHECK(phases[0].variables().size() <= 1);
  auto r = run("weyl_battery", {{"count", 6}, {"N_univariate", 2000}, {"N_bivariate", 60}});
  CHECK(check(r, "max_deviation").verdict == Verdict::Report);
}

TEST_CASE("expected table validation") {
  CHECK_THROWS_AS(ExpectedTable::parse(R"({"entries": {"a/b": {"value": 1}}})", "t"), InconsistencyError);
  CHECK_THROWS_AS(ExpectedTable::parse(R"({"entries": {"a/b": {"value": 1, "provenance": "DERIVED"}}})", "t"),
                  InconsistencyError);
  for (const auto& [key, e] : ExpectedTable::builtin().entries())
    if (e.provenance == Provenance::Derived) CHECK_MESSAGE(!e.oracle_command.empty(), key);
}

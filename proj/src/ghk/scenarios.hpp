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

// Self-checking reproductions. Each scenario takes a parameter struct whose
// defaults are the worked instance, and returns a ScenarioReport whose
// expected values come from the expected-values table.
//
// Checks calibrated by an oracle run only make sense at the parameters the
// oracle used. When a caller moves away from those defaults, such checks are
// downgraded to report-only rather than compared against a stale number.

#include <cstdint>
#include <string>
#include <vector>

#include "ghk/calculus.hpp"
#include "ghk/numeric.hpp"
#include "ghk/sequences.hpp"
#include "ghk/report.hpp"
#include "json.hpp"

namespace ghk {

struct D0DualParams {
  std::vector<Rational> c{Rational(1)};  // f = sum_l c_l e(l x2), k = c.size() <= 3
};
ScenarioReport scenario_d0_dual(const D0DualParams& p, const ExpectedTable& table);

struct KeyEstimateParams {
  unsigned d = 1;
  unsigned s = 1;
  SeminormMode mode = SeminormMode::Symbolic;  // Symbolic or Truncated
  std::int64_t modulus = 32;
  std::vector<std::int64_t> H_list{8, 16, 32};
  std::uint64_t seed = 1;
  bool zero_function = false;
};
ScenarioReport scenario_key_estimate(const KeyEstimateParams& p, const ExpectedTable& table);

struct SquaresParams {
  std::string alpha = "sqrt(2) - 1";
  std::int64_t N = 100'000;
  std::int64_t distance_N = 64;
};
ScenarioReport scenario_squares_counterexample(const SquaresParams& p, const ExpectedTable& table);

struct BadEnumerationParams {
  unsigned ell = 2;
  std::string alpha = "sqrt(2) - 1";
  std::int64_t N = 10'000;
  std::int64_t scan_bound = kEnumerationScanBound;
};
ScenarioReport scenario_bad_enumeration(const BadEnumerationParams& p, const ExpectedTable& table);

struct SeminormLawsParams {
  std::int64_t N = 32;
  std::int64_t trials = 200;
  std::uint64_t seed = 1;
  bool inject_constant = false;
};
ScenarioReport scenario_seminorm_laws(const SeminormLawsParams& p, const ExpectedTable& table);

struct LowerLemmaParams {
  unsigned s = 2;
  std::vector<std::int64_t> H_list{8, 16, 32, 64, 128};
  bool unit_weights = false;
  bool constant_function = false;
};
ScenarioReport scenario_lower_lemma(const LowerLemmaParams& p, const ExpectedTable& table, const SymbolTable& symbols);

// Batteries behind the oracle-equivalence criteria.

struct U2Params {
  std::vector<std::int64_t> moduli{16, 64, 128};
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
};
ScenarioReport scenario_u2_equivalence(const U2Params& p, const ExpectedTable& table);

struct ConsistencyParams {
  std::int64_t H = 128;
};
ScenarioReport scenario_consistency_battery(const ConsistencyParams& p, const ExpectedTable& table,
                                            const SymbolTable& symbols);

struct WeylBatteryParams {
  std::int64_t count = 24;
  std::uint64_t seed = 1;
  std::int64_t N_univariate = 100'000;
  std::int64_t N_bivariate = 1'000;
};
ScenarioReport scenario_weyl_battery(const WeylBatteryParams& p, const ExpectedTable& table,
                                     const SymbolTable& symbols);

/// The seeded phase polynomials of the Weyl battery. Even indices are
/// univariate in n, odd ones bivariate in (n, m).
std::vector<PhasePolynomial> weyl_battery_phases(std::int64_t count, std::uint64_t seed);

/// Scenario ids accepted by run_scenario, in a fixed order.
const std::vector<std::string>& scenario_names();

/// Whether the scenario takes a "seed" parameter.
bool scenario_is_seeded(const std::string& id);

/// Runs a scenario from a JSON parameter object. Unknown parameter names,
/// wrong types and out-of-range values raise ConfigError.
ScenarioReport run_scenario(const std::string& id, const nlohmann::json& params, const ExpectedTable& table,
                            const SymbolTable& symbols);

}  // namespace ghk

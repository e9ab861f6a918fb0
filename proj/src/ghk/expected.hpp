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

// The expected-values table: (scenario, check) -> value, tolerance,
// provenance tag and the command that regenerates it.

#include <map>
#include <string>

#include "json.hpp"

namespace ghk {

enum class Provenance { Paper, Trivial, Derived };
const char* to_string(Provenance p);

struct ExpectedValue {
  nlohmann::json value;
  double tolerance = 0.0;
  Provenance provenance = Provenance::Trivial;
  std::string oracle_command;
  /// "equal": |computed - value| <= tolerance; "at_most": computed <= value + tolerance.
  std::string comparison = "equal";

  double number() const;
  bool accepts(double computed) const;
};

class ExpectedTable {
 public:
  /// Parses and validates; every entry needs a provenance tag, DERIVED
  /// entries an oracle command. Throws InconsistencyError otherwise.
  static ExpectedTable parse(const std::string& json_text, const std::string& origin);
  static ExpectedTable load(const std::string& path);
  /// $GHK_EXPECTED_VALUES if set, else the table compiled into the library.
  static const ExpectedTable& builtin();

  const ExpectedValue& at(const std::string& scenario, const std::string& check) const;
  bool contains(const std::string& scenario, const std::string& check) const;
  const std::map<std::string, ExpectedValue>& entries() const { return entries_; }

 private:
  std::map<std::string, ExpectedValue> entries_;
};

}  // namespace ghk

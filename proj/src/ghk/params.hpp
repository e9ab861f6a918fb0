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

// Strict readers for JSON parameter objects: type-checked lookups with
// defaults, and rejection of any key nobody asked for.

#include <cstdint>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "ghk/errors.hpp"
#include "ghk/scalars.hpp"
#include "json.hpp"

namespace ghk {

class ParamReader {
 public:
  ParamReader(const nlohmann::json& params, std::string context) : context_(std::move(context)) {
    if (params.is_null()) return;
    if (!params.is_object()) throw ConfigError(context_ + ": parameters must be an object");
    params_ = params;
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    seen_.insert(key);
    if (!params_.contains(key)) return fallback;
    const nlohmann::json& v = params_[key];
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) bad(key, "a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) bad(key, "an integer");
      if constexpr (std::is_unsigned_v<T>)
        if (v.is_number_integer() && v.get<long long>() < 0) bad(key, "a non-negative integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) bad(key, "a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) bad(key, "a string");
    } else if constexpr (std::is_same_v<T, std::vector<std::int64_t>>) {
      if (!v.is_array()) bad(key, "an array of integers");
      for (const auto& e : v)
        if (!e.is_number_integer()) bad(key, "an array of integers");
    }
    return v.get<T>();
  }

  bool has(const std::string& key) const { return params_.contains(key); }
  const nlohmann::json& raw(const std::string& key) {
    seen_.insert(key);
    return params_.at(key);
  }
  /// Like raw(), but a missing key is a ConfigError.
  const nlohmann::json& require(const std::string& key) {
    if (!has(key)) throw ConfigError(context_ + ": missing '" + key + "'");
    return raw(key);
  }
  template <class T>
  T require(const std::string& key) {
    if (!has(key)) throw ConfigError(context_ + ": missing '" + key + "'");
    return get<T>(key, T{});
  }

  void finish() const {
    for (const auto& [k, v] : params_.items())
      if (!seen_.count(k)) throw ConfigError(context_ + ": unknown parameter '" + k + "'");
  }

  const std::string& context() const { return context_; }

 private:
  [[noreturn]] void bad(const std::string& key, const std::string& what) const {
    throw ConfigError(context_ + ": parameter '" + key + "' must be " + what);
  }

  std::string context_;
  nlohmann::json params_ = nlohmann::json::object();
  std::set<std::string> seen_;
};

inline Rational rational_literal(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return parse_rational(v.dump());
  throw ConfigError(where + ": expected a rational literal");
}

}  // namespace ghk

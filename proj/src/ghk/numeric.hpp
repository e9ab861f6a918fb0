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

// Numeric instantiation of exact values.
//
// Angles are carried as Turn: a point of R/Z stored as a 128-bit binary
// fraction. Multiplying a Turn by an integer is exact modulo 1 (wrap-around
// arithmetic on unsigned __int128), so quantities like {n^3 alpha} for
// n ~ 1e5 are computed without the catastrophic loss a double would suffer.

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "ghk/polynomial.hpp"
#include "ghk/scalars.hpp"

namespace ghk {

using u128 = unsigned __int128;
using Complex = std::complex<double>;

/// Integer reduced mod 2^128 (two's complement for negatives).
u128 wrap_u128(const Integer& z);
inline u128 wrap_u128(long long v) { return static_cast<u128>(static_cast<__int128>(v)); }

struct Turn {
  u128 bits = 0;

  static Turn from_rational(const Rational& r);

  /// Position in [0, 1).
  double to_double() const {
    return static_cast<double>(static_cast<std::uint64_t>(bits >> 64)) * 0x1p-64 +
           static_cast<double>(static_cast<std::uint64_t>(bits)) * 0x1p-128;
  }
  /// Signed distance to the nearest integer, in (-1/2, 1/2].
  double centered() const {
    double t = to_double();
    return t > 0.5 ? t - 1.0 : t;
  }
  /// ||t||, the distance to the nearest integer.
  double distance_to_integer() const {
    double c = centered();
    return c < 0 ? -c : c;
  }
  Complex character() const;

  Turn operator-() const { return {static_cast<u128>(0) - bits}; }
  friend Turn operator+(Turn a, Turn b) { return {a.bits + b.bits}; }
  friend Turn operator-(Turn a, Turn b) { return {a.bits - b.bits}; }
  friend Turn operator*(u128 k, Turn t) { return {k * t.bits}; }
  Turn& operator+=(Turn o) {
    bits += o.bits;
    return *this;
  }
  friend bool operator==(Turn a, Turn b) { return a.bits == b.bits; }
};

/// e(t) = exp(2 pi i t) for a double angle, reduced first.
Complex unit(double t);

/// A real number known to 256 fractional bits: rationals (exactly, up to
/// rounding at bit 256), decimal literals, and expressions such as
/// "sqrt(2) - 1" or "1/2*sqrt(5) + 1/3".
class NumericReal {
 public:
  NumericReal() = default;
  explicit NumericReal(const Rational& r);
  explicit NumericReal(double v);
  static NumericReal parse(std::string_view text);

  double value() const { return value_; }
  const std::string& literal() const { return literal_; }

  /// {c * x} as a Turn, for a rational multiplier c.
  Turn scaled_turn(const Rational& c) const;
  Turn turn() const { return scaled_turn(Rational(1)); }
  /// floor(x * 2^fixed_bits).
  const Integer& fixed() const { return fixed_; }
  static constexpr unsigned fixed_bits() { return 256; }

 private:
  Integer fixed_;  // round(x * 2^256)
  double value_ = 0.0;
  std::string literal_ = "0";
};

/// Numeric values for the formal irrational symbols.
class SymbolTable {
 public:
  SymbolTable() = default;

  /// alpha = sqrt(2) - 1, beta = sqrt(3) - 1.
  static SymbolTable defaults();

  void set(const std::string& name, const NumericReal& value) { values_[name] = value; }
  bool contains(const std::string& name) const { return values_.count(name) != 0; }
  const NumericReal& at(const std::string& name) const;
  std::set<std::string> names() const;

  Turn turn(const FormalScalar& x) const;
  double value(const FormalScalar& x) const;

 private:
  std::map<std::string, NumericReal> values_;
};

/// Numeric value of e(p(point)), computed modulo 1 in Turn arithmetic.
Turn evaluate_phase(const PhasePolynomial& p, const std::map<std::string, long long>& point,
                    const SymbolTable& symbols);

/// Precompiled phase polynomial for fast repeated numeric evaluation.
class CompiledPhase {
 public:
  CompiledPhase(const PhasePolynomial& p, const std::vector<std::string>& variable_order,
                const SymbolTable& symbols);
  Turn operator()(const long long* values) const;

 private:
  struct Term {
    Turn coefficient;
    std::vector<std::pair<int, unsigned>> factors;  // (variable index, exponent)
  };
  std::vector<Term> terms_;
};

}  // namespace ghk

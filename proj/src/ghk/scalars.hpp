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

// Exact scalars: rationals and the field Q + sum_i Q*alpha_i of formal
// irrationals.
//
// Every declared irrational symbol is assumed, together with 1, to be
// rationally independent of all the others. Zero tests, and therefore the
// Weyl evaluator, silently give wrong answers if a user instantiates the
// symbols with rationally dependent values (e.g. alpha = sqrt(2) - 1 and
// beta = sqrt(2)).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace ghk {

using Rational = mpq_class;
using Integer = mpz_class;

/// Builds p/q in lowest terms; q must be nonzero.
Rational make_rational(const Integer& p, const Integer& q = 1);
Rational make_rational(long long p, long long q = 1);

/// Representative of r mod 1 in [0, 1).
Rational frac(const Rational& r);
Integer floor_of(const Rational& r);
bool is_integer(const Rational& r);
std::string to_string(const Rational& r);

/// Parses "3", "-3/7", "0.25", "1e-3". Decimals are converted exactly.
Rational parse_rational(std::string_view text);

int compare(const Rational& a, const Rational& b);

/// Exact element rational + sum_name coef(name) * name.
class FormalScalar {
 public:
  using IrrationalParts = std::map<std::string, Rational>;

  FormalScalar() = default;
  FormalScalar(const Rational& r);  // NOLINT: implicit embedding of Q
  FormalScalar(long long v) : FormalScalar(Rational(static_cast<long>(v))) {}  // NOLINT

  static FormalScalar symbol(const std::string& name, const Rational& coefficient = 1);

  const Rational& rational_part() const { return rational_; }
  const IrrationalParts& irrational_parts() const { return irrational_; }

  bool is_rational() const { return irrational_.empty(); }
  bool is_zero() const { return irrational_.empty() && sgn(rational_) == 0; }

  FormalScalar operator-() const;
  FormalScalar& operator+=(const FormalScalar& o);
  FormalScalar& operator-=(const FormalScalar& o);
  FormalScalar& operator*=(const Rational& r);

  friend FormalScalar operator+(FormalScalar a, const FormalScalar& b) { return a += b; }
  friend FormalScalar operator-(FormalScalar a, const FormalScalar& b) { return a -= b; }
  friend FormalScalar operator*(FormalScalar a, const Rational& r) { return a *= r; }
  friend FormalScalar operator*(const Rational& r, FormalScalar a) { return a *= r; }

  /// Product in the ambient reals; at least one factor must be rational.
  /// Throws UnsupportedError otherwise (alpha*beta is not in the field).
  friend FormalScalar operator*(const FormalScalar& a, const FormalScalar& b);

  friend bool operator==(const FormalScalar& a, const FormalScalar& b);
  friend bool operator<(const FormalScalar& a, const FormalScalar& b);

  /// Same irrational parts, rational part reduced into [0, 1).
  FormalScalar mod_one() const;

  /// Canonical literal, e.g. "1/3 + 2*alpha - 1/2*beta". Parses back exactly.
  std::string to_string() const;

  /// Parses a literal such as "1/3 + 2*alpha", "-alpha/2", "0.5*beta".
  /// Identifiers not in `declared` are rejected with a ConfigError.
  static FormalScalar parse(std::string_view text, const std::set<std::string>& declared);

 private:
  void normalize();

  Rational rational_{0};
  IrrationalParts irrational_;
};

inline bool operator!=(const FormalScalar& a, const FormalScalar& b) { return !(a == b); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(const FormalScalar& f) { return f.is_zero(); }

inline Rational coeff_mul(const Rational& a, const Rational& b) { return a * b; }
inline FormalScalar coeff_mul(const FormalScalar& a, const Rational& b) { return a * b; }
inline FormalScalar coeff_mul(const Rational& a, const FormalScalar& b) { return b * a; }
inline FormalScalar coeff_mul(const FormalScalar& a, const FormalScalar& b) { return a * b; }

inline std::string coeff_to_string(const Rational& r) { return to_string(r); }
inline std::string coeff_to_string(const FormalScalar& f) { return f.to_string(); }

}  // namespace ghk

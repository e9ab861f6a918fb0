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

#include <map>
#include <string>

#include "ghk/numeric.hpp"
#include "ghk/scalars.hpp"

namespace ghk {

/// Exact complex number sum_k amplitude_k * e(phase_k), amplitudes rational.
///
/// Canonical form: the rational part of every phase lies in [0, 1/2); a
/// phase in [1/2, 1) is rewritten via e(1/2) = -1. Equal phases are merged
/// and zero amplitudes dropped, so structural zero is the empty sum. Sums of
/// roots of unity that vanish only through cyclotomic relations of higher
/// order (1 + e(1/3) + e(2/3)) are not reduced; see `ZeroTest`.
class ExactComplex {
 public:
  using Terms = std::map<FormalScalar, Rational>;

  ExactComplex() = default;
  ExactComplex(const Rational& r);  // NOLINT: real embedding
  ExactComplex(long long v) : ExactComplex(Rational(static_cast<long>(v))) {}  // NOLINT

  /// amplitude * e(phase)
  static ExactComplex exp(const FormalScalar& phase, const Rational& amplitude = 1);
  /// The imaginary unit, e(1/4).
  static ExactComplex i();

  const Terms& terms() const { return terms_; }
  bool is_structural_zero() const { return terms_.empty(); }

  ExactComplex conj() const;
  ExactComplex operator-() const;
  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o) { return *this += -o; }
  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b);
  ExactComplex scaled(const Rational& r) const;
  /// Multiplies by e(phase).
  ExactComplex rotated(const FormalScalar& phase) const;

  Complex numeric(const SymbolTable& symbols) const;

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const ExactComplex& a, const ExactComplex& b) { return a.terms_ < b.terms_; }

  /// e.g. "1/3*e(1/7) + 2/3*e(10/21)"; "0" for the empty sum.
  std::string to_string() const;

 private:
  void add(const FormalScalar& phase, const Rational& amplitude);
  Terms terms_;
};

inline bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

/// Outcome of a zero test: structural first, numeric fallback second.
struct ZeroTest {
  enum class Fired { Structural, Numeric, NotZero };
  bool is_zero = false;
  Fired fired = Fired::NotZero;
  double magnitude = 0.0;
};

ZeroTest test_zero(const ExactComplex& z, const SymbolTable& symbols, double tolerance = 1e-12);
const char* to_string(ZeroTest::Fired f);

}  // namespace ghk

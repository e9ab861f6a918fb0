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

// Symbolic trigonometric functions with integer parameters.
//
// A SymbolicTrig is a finite sum of terms  a * e(p(theta)) * chi_{K(theta)}(x)
// where theta are named integer variables (iterate exponents, differencing
// and averaging parameters), a is rational, p is a phase polynomial and K is
// a vector of integer-valued polynomials. Concrete trigonometric polynomials
// are the parameter-free case.
//
// Box averages over a subset of the parameters are evaluated in the limit by
// two rules:
//   * a term whose frequency depends on an averaged variable tends to 0 in
//     L2 (the coincidence set K(m) = K(m') has zero density);
//   * a term with frequency free of the averaged variables is replaced by
//     the Weyl limit of its phase.
// Both are generic in the remaining parameters: they hold outside the zero
// set of some nonzero polynomial in those parameters, which has zero box
// density. Results are therefore valid when later averaged over the
// remaining parameters, not pointwise.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ghk/affine.hpp"

namespace ghk {

class SymbolicTrig {
 public:
  using FrequencyPoly = std::vector<RationalPolynomial>;
  struct Key {
    FrequencyPoly frequency;
    PhasePolynomial phase;
    friend bool operator<(const Key& a, const Key& b) {
      if (a.frequency != b.frequency) return a.frequency < b.frequency;
      return a.phase < b.phase;
    }
    friend bool operator==(const Key& a, const Key& b) { return a.frequency == b.frequency && a.phase == b.phase; }
  };
  using Terms = std::map<Key, Rational>;

  explicit SymbolicTrig(std::size_t dimension = 0) : dim_(dimension) {}
  static SymbolicTrig constant(std::size_t dimension, const Rational& c = 1);
  static SymbolicTrig from(const TrigPolynomial& f);

  std::size_t dimension() const { return dim_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::set<std::string> variables() const;

  /// Phases are reduced mod 1 coefficientwise, and e(1/2) = -1 is used to
  /// bring the constant rational part into [0, 1/2).
  void add_term(FrequencyPoly k, const PhasePolynomial& phase, const Rational& amplitude);

  SymbolicTrig& operator+=(const SymbolicTrig& o);
  friend SymbolicTrig operator+(SymbolicTrig a, const SymbolicTrig& b) { return a += b; }
  friend SymbolicTrig operator*(const SymbolicTrig& a, const SymbolicTrig& b);
  SymbolicTrig conj() const;
  SymbolicTrig scaled(const Rational& r) const;
  /// Multiplies every term by e(p).
  SymbolicTrig rotated(const PhasePolynomial& p) const;

  friend bool operator==(const SymbolicTrig& a, const SymbolicTrig& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Requires a parameter-free function.
  TrigPolynomial to_trig() const;
  /// Dimension-0, parameter-free value.
  ExactComplex to_scalar() const;
  /// Numeric function at a concrete parameter point.
  NumTrig evaluate(const std::map<std::string, long long>& point, const SymbolTable& symbols) const;

  std::string to_string() const;

 private:
  std::size_t dim_;
  Terms terms_;
};

SymbolicTrig apply_iterate(const AffineSystem& sys, const SymbolicTrig& f, const RationalPolynomial& n);
SymbolicTrig tensor(const SymbolicTrig& f, const SymbolicTrig& g);

/// Term bookkeeping of one average_limit call.
struct AverageCensus {
  std::size_t input_terms = 0;
  std::size_t dropped_frequency = 0;  // frequency depends on an averaged variable
  std::size_t vanished_weyl = 0;      // irrational non-constant phase
  std::size_t kept = 0;
};

/// Limit of box averages over `inner`, generic in the other parameters.
SymbolicTrig average_limit(const SymbolicTrig& f, const std::set<std::string>& inner,
                           AverageCensus* census = nullptr);

/// Integral over the torus, generic in the parameters: keeps the terms whose
/// frequency is identically zero. The result has dimension 0.
SymbolicTrig integral(const SymbolicTrig& f);

/// Weyl limit of e(p) over `inner` as a function of the other variables:
/// a list of (amplitude, phase). Empty when the limit vanishes generically.
/// Throws UnsupportedError when the limit depends on residues of the outer
/// variables modulo a denominator.
std::vector<std::pair<Rational, PhasePolynomial>> generic_weyl(const PhasePolynomial& p,
                                                               const std::set<std::string>& inner);

}  // namespace ghk

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

// Affine unipotent systems T x = A x + b on the torus T^d, and the two
// function representations living on them: exact trigonometric polynomials
// (amplitudes in ExactComplex) and numeric ones (double amplitudes, used by
// truncated averages).
//
// Points are columns and frequencies rows: chi_k(T^n x) = e(k c(n)) chi_{k A^n}(x)
// with A^n = sum_j C(n, j) (A - I)^j and c(n) = sum_j C(n, j + 1) (A - I)^j b.
// Both sums stop at j = d - 1 and hold for every integer n, negative included.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ghk/exact_complex.hpp"
#include "ghk/numeric.hpp"
#include "ghk/polynomial.hpp"

namespace ghk {

/// Cap on the number of terms of any trigonometric polynomial.
inline constexpr std::size_t kTermCap = 1'000'000;

using IntMatrix = std::vector<std::vector<Integer>>;

class AffineSystem {
 public:
  /// Throws InvalidArgument unless A is square, matches b and (A - I)^d = 0.
  AffineSystem(IntMatrix a, std::vector<FormalScalar> b);

  std::size_t dimension() const { return b_.size(); }
  const IntMatrix& matrix() const { return a_; }
  const std::vector<FormalScalar>& translation() const { return b_; }

  /// Block-diagonal product T x S.
  AffineSystem product(const AffineSystem& other) const;

  IntMatrix matrix_power(const Integer& n) const;
  std::vector<FormalScalar> offset(const Integer& n) const;

  /// Same closed forms with an integer-valued polynomial exponent.
  std::vector<std::vector<RationalPolynomial>> matrix_power(const RationalPolynomial& n) const;
  std::vector<PhasePolynomial> offset(const RationalPolynomial& n) const;

  /// (A - I)^j b for j < d; the nonzero powers of A - I.
  const std::vector<IntMatrix>& nilpotent_powers() const { return nil_powers_; }
  const std::vector<std::vector<FormalScalar>>& nilpotent_translations() const { return nil_b_; }

 private:
  IntMatrix a_;
  std::vector<FormalScalar> b_;
  std::vector<IntMatrix> nil_powers_;             // (A - I)^j, j = 0 .. last nonzero
  std::vector<std::vector<FormalScalar>> nil_b_;  // (A - I)^j b, same range
};

/// T(x1, x2) = (x1 + a, x2 + 2 x1 + a) on T^2.
AffineSystem quadratic_skew(const FormalScalar& a);

using Frequency = std::vector<Integer>;

/// Exact finite character sum sum_k c_k chi_k on T^d.
class TrigPolynomial {
 public:
  using Terms = std::map<Frequency, ExactComplex>;

  explicit TrigPolynomial(std::size_t dimension = 0) : dim_(dimension) {}
  static TrigPolynomial constant(std::size_t dimension, const ExactComplex& c);
  static TrigPolynomial character(const Frequency& k, const ExactComplex& amplitude = ExactComplex(1));

  std::size_t dimension() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Frequency& k, const ExactComplex& c);
  TrigPolynomial& operator+=(const TrigPolynomial& o);
  friend TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }
  friend TrigPolynomial operator-(TrigPolynomial a, const TrigPolynomial& b) { return a += b.scaled(ExactComplex(-1)); }
  friend TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b);
  TrigPolynomial conj() const;
  TrigPolynomial scaled(const ExactComplex& c) const;

  friend bool operator==(const TrigPolynomial& a, const TrigPolynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  std::size_t dim_;
  Terms terms_;
};

TrigPolynomial apply_iterate(const AffineSystem& sys, const TrigPolynomial& f, const Integer& n);
ExactComplex integral(const TrigPolynomial& f);
/// f (x) conj g on the product torus (frequency concatenation).
TrigPolynomial tensor(const TrigPolynomial& f, const TrigPolynomial& g);

using NumFrequency = std::vector<long long>;

/// Numeric trigonometric polynomial.
class NumTrig {
 public:
  using Terms = std::map<NumFrequency, Complex>;

  explicit NumTrig(std::size_t dimension = 0) : dim_(dimension) {}
  static NumTrig constant(std::size_t dimension, Complex c);
  static NumTrig from_exact(const TrigPolynomial& f, const SymbolTable& symbols);

  std::size_t dimension() const { return dim_; }
  const Terms& terms() const { return terms_; }

  void add_term(const NumFrequency& k, Complex c);
  NumTrig& operator+=(const NumTrig& o);
  friend NumTrig operator+(NumTrig a, const NumTrig& b) { return a += b; }
  friend NumTrig operator*(const NumTrig& a, const NumTrig& b);
  NumTrig conj() const;
  NumTrig scaled(Complex c) const;

  Complex integral() const;
  /// L2 norm via Parseval.
  double l2_norm() const;

 private:
  std::size_t dim_;
  Terms terms_;
};

double l2_distance(const NumTrig& a, const NumTrig& b);
NumTrig tensor(const NumTrig& f, const NumTrig& g);

/// Numeric instance of an affine system: the translation instantiated as
/// Turns, iterates computed in 128-bit fixed point modulo 1.
class NumericAffine {
 public:
  NumericAffine(const AffineSystem& sys, const SymbolTable& symbols);

  struct Step {
    std::vector<std::vector<long long>> matrix;  // A^n
    std::vector<Turn> offset;                    // c(n) mod 1
  };
  Step step(long long n) const;

  NumTrig apply(const Step& step, const NumTrig& f) const;
  NumTrig apply_iterate(const NumTrig& f, long long n) const { return apply(step(n), f); }
  std::size_t dimension() const { return dim_; }

 private:
  std::size_t dim_;
  std::vector<std::vector<std::vector<long long>>> nil_powers_;
  std::vector<std::vector<Turn>> nil_b_;
};

}  // namespace ghk

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

// Multiple ergodic averages E_n w_n T^{a_1(n)} f_1 ... T^{a_l(n)} f_l.
//
// Every finite average is reduced to an IterateTable: one row of exponents
// (a_1(n), ..., a_l(n)) and one weight per index point. Index sets are
// n in [1, N], or an axis-aligned box in Z^k with explicit corner.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ghk/affine.hpp"
#include "ghk/cyclic.hpp"
#include "ghk/sequences.hpp"
#include "ghk/symbolic.hpp"

namespace ghk {

struct FolnerBox {
  std::vector<std::int64_t> corner;
  std::vector<std::int64_t> sides;  // each >= 1
  std::int64_t size() const;
};

struct AverageSpec {
  /// One-variable sequences, averaged over n in [1, N].
  std::vector<IntegerSequence> sequences;
  std::int64_t N = 0;
  /// Følner form: integer-valued polynomials in `box_variables` over `box`.
  std::optional<FolnerBox> box;
  std::vector<RationalPolynomial> box_sequences;
  std::vector<std::string> box_variables;
  /// One weight per index point (box points row-major); empty means unit weights.
  std::vector<Complex> weights;
  double weight_bound = 1.0;
};

struct IterateTable {
  std::size_t ell = 0;
  std::vector<std::int64_t> exponents;  // row-major, rows x ell
  std::vector<Complex> weights;         // empty: unit weights
  std::int64_t rows() const { return ell ? static_cast<std::int64_t>(exponents.size() / ell) : 0; }
};

IterateTable iterate_table(const AverageSpec& spec);

template <class F>
struct Averaged {
  F function;
  double l2_norm = 0.0;
};

CyclicFunction average_over(const CyclicSystem& sys, const std::vector<CyclicFunction>& fs, const IterateTable& t);
NumTrig average_over(const NumericAffine& sys, const std::vector<NumTrig>& fs, const IterateTable& t);

Averaged<CyclicFunction> multiple_average(const CyclicSystem& sys, const std::vector<CyclicFunction>& fs,
                                         const AverageSpec& spec);
Averaged<NumTrig> multiple_average(const NumericAffine& sys, const std::vector<NumTrig>& fs, const AverageSpec& spec);

/// Exact N -> infinity limit for polynomial sequences.
TrigPolynomial multiple_average_symbolic(const AffineSystem& sys, const std::vector<IntegerSequence>& sequences,
                                         const std::vector<TrigPolynomial>& fs, AverageCensus* census = nullptr);

/// Largest s accepted by cubic_average.
inline constexpr unsigned kMaxCubicDegree = 4;

/// E_{n in [N]^s} prod_{eps != 0} T^{eps.n} f_eps; fs[e - 1] belongs to the
/// eps whose bitmask is e (bit j is eps_{j+1}).
CyclicFunction cubic_average(const CyclicSystem& sys, const std::vector<CyclicFunction>& fs, unsigned s,
                             std::int64_t N);
NumTrig cubic_average(const NumericAffine& sys, const std::vector<NumTrig>& fs, unsigned s, std::int64_t N);

template <class F>
struct SquareComparison {
  F lhs;  // E_n T^{a(n)} f1 T^{b(n)} f2 T^{a(n)+b(n)} f3
  F rhs;  // E_{r,s in [N]} T^r f1 T^s f2 T^{r+s} f3
  double distance = 0.0;
};

SquareComparison<CyclicFunction> square_vs_double_linear(const CyclicSystem& sys, const IntegerSequence& a,
                                                         const IntegerSequence& b, const CyclicFunction& f1,
                                                         const CyclicFunction& f2, const CyclicFunction& f3,
                                                         std::int64_t N);
SquareComparison<NumTrig> square_vs_double_linear(const NumericAffine& sys, const IntegerSequence& a,
                                                  const IntegerSequence& b, const NumTrig& f1, const NumTrig& f2,
                                                  const NumTrig& f3, std::int64_t N);

/// E_{n in [N]} mu(A cap T^{-k_1 a(n)} A cap ... cap T^{-k_l a(n)} A), with
/// A a set of flat point indices and mu the normalized counting measure.
double recurrence_average(const CyclicSystem& sys, const std::vector<std::int64_t>& A, const IntegerSequence& a,
                          const std::vector<std::int64_t>& ks, std::int64_t N);

struct ConvergenceRow {
  std::int64_t N;
  double value;
};

inline const std::vector<std::int64_t> kDefaultConvergenceNs{16, 32, 64, 128, 256, 512};

/// One row per N; the list must be strictly increasing.
std::vector<ConvergenceRow> convergence_table(const std::function<double(std::int64_t)>& producer,
                                              const std::vector<std::int64_t>& Ns = kDefaultConvergenceNs);

/// ||f - g||_2^2 = sum_k |f^(k) - g^(k)|^2, exactly.
ExactComplex l2_distance_squared(const TrigPolynomial& f, const TrigPolynomial& g);

}  // namespace ghk

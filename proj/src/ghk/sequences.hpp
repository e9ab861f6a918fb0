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

// Integer sequences a: N -> Z and the statistics run on them.
//
// Values are 64-bit; any evaluation that would overflow throws a
// ResourceError. Fractional parts {a(n) t} use Turn arithmetic, so they are
// exact modulo 1 up to the 128-bit representation of t.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ghk/exact_complex.hpp"
#include "ghk/numeric.hpp"

namespace ghk {

/// Default candidate budget of the enumeration kind.
inline constexpr std::int64_t kEnumerationScanBound = 10'000'000;

class IntegerSequence {
 public:
  enum class Kind { Polynomial, FloorPower, Indicator, Enumeration, Table };

  /// sum_k coeffs[k] n^k.
  static IntegerSequence polynomial(std::vector<std::int64_t> coeffs);
  /// floor(n^c), c > 0.
  static IntegerSequence floor_power(const NumericReal& c);
  /// base(n) * 1[{p(n) alpha} in [u, v)], p given by integer coefficients.
  static IntegerSequence indicator(const IntegerSequence& base, std::vector<std::int64_t> phase_coeffs,
                                   const NumericReal& alpha, const Rational& u, const Rational& v);
  /// Increasing enumeration of {n >= 1 : {n^ell alpha} in [u, v]}.
  static IntegerSequence enumeration(unsigned ell, const NumericReal& alpha, const Rational& u, const Rational& v,
                                     std::int64_t scan_bound = kEnumerationScanBound);
  static IntegerSequence table(std::vector<std::int64_t> values);
  /// One integer per line; blank lines and '#' comments are skipped.
  static IntegerSequence table_from_file(const std::string& path);

  Kind kind() const { return kind_; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

  /// a(n), n >= 1.
  std::int64_t operator()(std::int64_t n) const;
  /// a(1), ..., a(N).
  std::vector<std::int64_t> range(std::int64_t N) const;

  std::string describe() const;

 private:
  struct Enumerator;

  bool in_window(const Turn& t, bool closed) const;
  std::int64_t floor_power_at(std::int64_t n) const;

  Kind kind_ = Kind::Polynomial;
  std::vector<std::int64_t> coeffs_;           // polynomial, indicator phase
  std::shared_ptr<const IntegerSequence> base_;  // indicator
  NumericReal real_;                           // floor-power exponent, alpha
  std::optional<Rational> exact_exponent_;     // floor-power with rational c
  Turn lo_, hi_;                               // window [u, v] as Turns
  Rational u_, v_;
  unsigned ell_ = 1;
  std::shared_ptr<Enumerator> enumerator_;
  std::shared_ptr<const std::vector<std::int64_t>> table_;
};

const char* to_string(IntegerSequence::Kind k);

std::int64_t eval_sequence(const IntegerSequence& seq, std::int64_t n);
std::vector<std::int64_t> eval_range(const IntegerSequence& seq, std::int64_t N);

/// {a t} for an integer a and a real t.
Turn fractional_turn(std::int64_t a, const NumericReal& t);
/// Exact comparison of a Turn against a rational endpoint in [0, 1].
int compare_turn(const Turn& t, const Rational& r);

/// E_{n in [N]} e(a(n) t).
Complex weyl_sum(const IntegerSequence& seq, const NumericReal& t, std::int64_t N);
/// lim_N E_{n in [N]} e(a(n) t), exactly; polynomial kind only.
ExactComplex weyl_sum_limit(const IntegerSequence& seq, const FormalScalar& t);

struct Distribution {
  std::vector<Turn> sorted;          // the sample, ascending
  std::vector<double> frequencies;   // per bin
  double star_discrepancy = 0.0;
};

/// Points {a(n)^power t}, n in [N]. power = 1 is the linear probe.
Distribution empirical_distribution(const IntegerSequence& seq, const NumericReal& t, unsigned power,
                                    std::int64_t N, unsigned bins);
/// sup_x |#{i : t_i < x}/N - x| from a sorted sample.
double star_discrepancy(const std::vector<Turn>& sorted);
/// Fraction of the sample inside [lo, hi] (or [lo, hi) when !closed), exact.
double mass(const Distribution& d, const Rational& lo, const Rational& hi, bool closed = true);

double divisibility_density(const IntegerSequence& seq, std::int64_t r, std::int64_t N);
/// |{n <= N : sum_i ||a(n) alpha_i|| <= eps}| / N.
double bohr_recurrence_density(const IntegerSequence& seq, const std::vector<NumericReal>& alphas, double eps,
                               std::int64_t N);

}  // namespace ghk

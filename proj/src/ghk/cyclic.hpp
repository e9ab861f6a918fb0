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

// Finite cyclic systems Z_N1 x ... x Z_Nk with the shift x -> x + r.
//
// Points are flattened row-major, so the last factor varies fastest. The
// iterate convention is composition: (T^n f)(x) = f(x + n r).

#include <complex>
#include <cstdint>
#include <vector>

namespace ghk {

using Complex = std::complex<double>;
using CyclicFunction = std::vector<Complex>;

class CyclicSystem {
 public:
  struct Factor {
    std::int64_t modulus;
    std::int64_t step;  // reduced into [0, modulus)
  };

  CyclicSystem(std::int64_t modulus, std::int64_t step);
  explicit CyclicSystem(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::int64_t size() const { return size_; }
  /// Least L >= 1 with T^L = id.
  std::int64_t period() const { return period_; }
  /// The shift generates the whole group.
  bool is_ergodic() const { return period_ == size_; }

  /// perm[x] = index of T^n x.
  std::vector<std::int64_t> shift_table(std::int64_t n) const;

  /// The system with step d*r (T^d).
  CyclicSystem power(std::int64_t d) const;
  /// T x S on the product space; `other`'s points vary fastest.
  CyclicSystem product(const CyclicSystem& other) const;

  friend bool operator==(const CyclicSystem& a, const CyclicSystem& b);

 private:
  void init();
  std::vector<Factor> factors_;
  std::int64_t size_ = 1;
  std::int64_t period_ = 1;
};

inline bool operator==(const CyclicSystem::Factor& a, const CyclicSystem::Factor& b) {
  return a.modulus == b.modulus && a.step == b.step;
}
inline bool operator==(const CyclicSystem& a, const CyclicSystem& b) { return a.factors_ == b.factors_; }

void check_function(const CyclicSystem& sys, const CyclicFunction& f);

CyclicFunction apply_iterate(const CyclicSystem& sys, const CyclicFunction& f, std::int64_t n);
Complex integral(const CyclicSystem& sys, const CyclicFunction& f);

CyclicFunction multiply(const CyclicFunction& f, const CyclicFunction& g);
CyclicFunction conj(const CyclicFunction& f);
CyclicFunction scale(const CyclicFunction& f, Complex c);
/// (f (x) conj g)(x, y) = f(x) * conj(g(y)) on sys_f.product(sys_g).
CyclicFunction tensor(const CyclicFunction& f, const CyclicFunction& g);

double sup_norm(const CyclicFunction& f);
double l2_norm(const CyclicFunction& f);
double l2_distance(const CyclicFunction& f, const CyclicFunction& g);

/// Indicator of a set of flat indices.
CyclicFunction indicator(const CyclicSystem& sys, const std::vector<std::int64_t>& points);
/// The character x -> e(k x / N) on a single-factor system.
CyclicFunction character(const CyclicSystem& sys, std::int64_t k);

}  // namespace ghk

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

// Multiplicative derivatives, Gowers-Host-Kra seminorms and dual functions.
//
//   Delta_h f   = prod_{eps in {0,1}^t} C^{|eps|} T^{eps.h} f
//   [[f]]_s^{2^s} = lim_H E_{h in [H]^s} int Delta_h f          ([[f]]_0 = int f)
//   D_s f       = lim_M E_{m in [M]^s} prod_{eps != 0} C^{|eps|} T^{eps.m} f
//
// Cyclic systems are exact: T^L = id, so every box limit equals the average
// over one full period Z_L. Affine systems are evaluated symbolically (see
// symbolic.hpp) or by direct truncation at a finite box.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ghk/cyclic.hpp"
#include "ghk/symbolic.hpp"

namespace ghk {

/// Largest degree any seminorm or dual request may ask for.
inline constexpr unsigned kMaxDegree = 6;

enum class SeminormMode { CyclicExact, Symbolic, Truncated };
const char* to_string(SeminormMode m);
SeminormMode parse_seminorm_mode(const std::string& s);

/// The 2^s-th root of a seminorm power. s = 0 returns |power|. Real parts in
/// [-1e-12, 0] are clamped to 0; anything more negative, or an imaginary part
/// above 1e-9, is an InconsistencyError.
double seminorm_root(Complex power, unsigned s);

// --- cyclic --------------------------------------------------------------

CyclicFunction mult_derivative(const CyclicSystem& sys, const CyclicFunction& f, const std::vector<std::int64_t>& h);

/// E(f | invariant sets): the mean of f over each T-orbit.
CyclicFunction invariant_projection(const CyclicSystem& sys, const CyclicFunction& f);

/// [[f]]_s^{2^s} by the literal definition: all h in Z_L^s, full products.
Complex seminorm_power_definition(const CyclicSystem& sys, const CyclicFunction& f, unsigned s);
/// Same value by the recursion [[f]]_s^{2^s} = E_h [[Delta_h f]]_{s-1}^{2^{s-1}},
/// bottoming out at [[g]]_1^2 = ||E(g|I)||^2.
Complex seminorm_power(const CyclicSystem& sys, const CyclicFunction& f, unsigned s);
/// E_{h in [1,H]^s} int Delta_h f.
Complex seminorm_power_truncated(const CyclicSystem& sys, const CyclicFunction& f, unsigned s, std::int64_t H);

/// [[f]]_2 via [[f]]_2^4 = sum_xi |f^(xi)|^4 (FFTW). Requires an ergodic
/// shift; throws PreconditionError otherwise.
double u2_via_fft(const CyclicSystem& sys, const CyclicFunction& f);

/// D_s f by the literal definition over Z_L^s.
CyclicFunction dual_definition(const CyclicSystem& sys, const CyclicFunction& f, unsigned s);
/// D_s f = E_{m' in Z_L^{s-1}} Delta*_{m'} f * conj E(Delta_{m'} f | I).
CyclicFunction dual_function(const CyclicSystem& sys, const CyclicFunction& f, unsigned s);
CyclicFunction dual_truncated(const CyclicSystem& sys, const CyclicFunction& f, unsigned s, std::int64_t M);

// --- affine, symbolic ----------------------------------------------------

SymbolicTrig mult_derivative(const AffineSystem& sys, const SymbolicTrig& f, const std::vector<RationalPolynomial>& h);

/// Parameter names `prefix`1.. that do not occur in `used`.
std::vector<std::string> fresh_variables(const std::string& prefix, unsigned count, const std::set<std::string>& used);

/// [[f]]_s^{2^s} as a dimension-0 function of f's own parameters (generic).
SymbolicTrig seminorm_power_symbolic(const AffineSystem& sys, const SymbolicTrig& f, unsigned s,
                                     AverageCensus* census = nullptr);

struct SymbolicSeminorm {
  ExactComplex power;  // [[f]]_s^{2^s}
  double value = 0.0;  // the root
  bool exact_zero = false;
};
/// Parameter-free seminorm.
SymbolicSeminorm gowers_seminorm_symbolic(const AffineSystem& sys, const TrigPolynomial& f, unsigned s,
                                          const SymbolTable& symbols);

SymbolicTrig dual_symbolic(const AffineSystem& sys, const SymbolicTrig& f, unsigned s, AverageCensus* census = nullptr);
TrigPolynomial dual_symbolic(const AffineSystem& sys, const TrigPolynomial& f, unsigned s);

// --- affine, truncated ---------------------------------------------------

Complex seminorm_power_truncated(const NumericAffine& sys, const NumTrig& f, unsigned s, std::int64_t H);
NumTrig dual_truncated(const NumericAffine& sys, const NumTrig& f, unsigned s, std::int64_t M);

}  // namespace ghk

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

#include <cstdint>
#include <string>
#include <vector>

#include "ghk/exact_complex.hpp"
#include "ghk/polynomial.hpp"

namespace ghk {

/// Largest period grid q^|V| the exact summation will enumerate.
inline constexpr std::uint64_t kWeylPeriodCap = 10'000'000;

/// lim_{H->inf} E_{v in [H]^|V|} e(p(v)) for V = `vars` (default: the
/// variables of p).
///
/// Weyl's criterion under the rational-independence assumption: the limit is
/// 0 as soon as a non-constant monomial carries an irrational coefficient.
/// Otherwise, with q the least common denominator of the non-constant
/// coefficients, e(p) is q-periodic in every variable and the limit is
/// e(p(0)) times the average of e(p(v) - p(0)) over one period (Z/q)^|V|,
/// summed exactly.
ExactComplex weyl_limit(const PhasePolynomial& p);
ExactComplex weyl_limit(const PhasePolynomial& p, const std::vector<std::string>& vars);

/// Direct truncated average E_{v in [H]^|V|} e(p(v)), numerically, with the
/// symbols instantiated by `symbols`. Reference for tests and diagnostics.
Complex truncated_phase_average(const PhasePolynomial& p, const std::vector<std::string>& vars,
                                std::int64_t H, const SymbolTable& symbols);

}  // namespace ghk

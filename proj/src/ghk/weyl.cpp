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
#include "ghk/weyl.hpp"

#include <algorithm>

#include "ghk/errors.hpp"
#include "ghk/parallel.hpp"

namespace ghk {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % q);
}

}  // namespace

ExactComplex weyl_limit(const PhasePolynomial& p) {
  const auto vs = p.variables();
  return weyl_limit(p, std::vector<std::string>(vs.begin(), vs.end()));
}

ExactComplex weyl_limit(const PhasePolynomial& p, const std::vector<std::string>& vars) {
  for (const auto& v : p.variables())
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw InvalidArgument("weyl_limit: variable '" + v + "' is not averaged over");

  const FormalScalar constant = p.constant_term();
  Integer q = 1;
  for (const auto& [m, c] : p.terms()) {
    if (m.empty()) continue;
    if (!c.is_rational()) return {};
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.rational_part().get_den_mpz_t());
  }
  if (q == 1) return ExactComplex::exp(constant);

  // Only the variables that occur matter; the others average trivially.
  std::vector<std::string> used;
  for (const auto& v : vars)
    if (p.variables().count(v)) used.push_back(v);

  if (!q.fits_slong_p()) throw ResourceError("weyl_limit: period too large");
  const std::int64_t period = q.get_si();
  std::uint64_t grid = 1;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (grid > kWeylPeriodCap / static_cast<std::uint64_t>(period))
      throw ResourceError("weyl_limit: period grid " + std::to_string(period) + "^" +
                          std::to_string(used.size()) + " exceeds cap " + std::to_string(kWeylPeriodCap));
    grid *= static_cast<std::uint64_t>(period);
  }

  struct IntTerm {
    std::int64_t coefficient;  // numerator over q, reduced mod q
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };
  std::vector<IntTerm> terms;
  for (const auto& [m, c] : p.terms()) {
    if (m.empty()) continue;
    Rational scaled = frac(c.rational_part()) * Rational(q);
    IntTerm t{scaled.get_num().get_si(), {}};
    for (const auto& [v, e] : m)
      t.factors.emplace_back(static_cast<std::size_t>(std::find(used.begin(), used.end(), v) - used.begin()), e);
    terms.push_back(std::move(t));
  }

  // Residue histogram of q*(p(v) - p(0)) mod q over the period grid.
  using Histogram = std::vector<std::uint64_t>;
  const std::size_t dims = used.size();
  Histogram counts = parallel::reduce<Histogram>(
      static_cast<std::int64_t>(grid),
      [&](std::int64_t begin, std::int64_t end) {
        Histogram h(static_cast<std::size_t>(period), 0);
        std::vector<std::int64_t> point(dims);
        for (std::int64_t idx = begin; idx < end; ++idx) {
          std::int64_t rest = idx;
          for (std::size_t d = 0; d < dims; ++d) {
            point[d] = rest % period;
            rest /= period;
          }
          std::int64_t r = 0;
          for (const auto& t : terms) {
            std::int64_t m = t.coefficient;
            for (const auto& [d, e] : t.factors)
              for (unsigned k = 0; k < e; ++k) m = mulmod(m, point[d], period);
            r += m;
            if (r >= period) r -= period;
          }
          ++h[static_cast<std::size_t>(r)];
        }
        return h;
      },
      [](Histogram a, Histogram b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
      },
      4096);

  // Strip vanishing sums over cosets of prime-order subgroups, so that
  // e.g. 1 + e(1/3) + e(2/3) comes out as a structural zero.
  std::int64_t rest = period;
  for (std::int64_t prime = 2; prime <= rest; ++prime) {
    if (rest % prime) continue;
    while (rest % prime == 0) rest /= prime;
    const std::int64_t stride = period / prime;
    for (std::int64_t a = 0; a < stride; ++a) {
      std::uint64_t low = counts[static_cast<std::size_t>(a)];
      for (std::int64_t j = 1; j < prime && low; ++j) low = std::min(low, counts[static_cast<std::size_t>(a + j * stride)]);
      if (!low) continue;
      for (std::int64_t j = 0; j < prime; ++j) counts[static_cast<std::size_t>(a + j * stride)] -= low;
    }
  }

  ExactComplex out;
  const Integer total(std::to_string(grid));
  for (std::int64_t r = 0; r < period; ++r) {
    const std::uint64_t n = counts[static_cast<std::size_t>(r)];
    if (!n) continue;
    out += ExactComplex::exp(constant + FormalScalar(make_rational(r, period)),
                             make_rational(Integer(std::to_string(n)), total));
  }
  return out;
}

Complex truncated_phase_average(const PhasePolynomial& p, const std::vector<std::string>& vars,
                                std::int64_t H, const SymbolTable& symbols) {
  if (H < 1) throw InvalidArgument("truncation must be positive");
  const CompiledPhase phase(p, vars, symbols);
  const std::size_t dims = vars.size();
  std::int64_t total = 1;
  for (std::size_t i = 0; i < dims; ++i) total *= H;
  Complex sum = parallel::reduce<Complex>(
      total,
      [&](std::int64_t begin, std::int64_t end) {
        Complex acc = 0.0;
        std::vector<long long> point(dims);
        for (std::int64_t idx = begin; idx < end; ++idx) {
          std::int64_t rest = idx;
          for (std::size_t d = 0; d < dims; ++d) {
            point[d] = 1 + rest % H;
            rest /= H;
          }
          acc += phase(point.data()).character();
        }
        return acc;
      },
      [](Complex a, Complex b) { return a + b; }, 4096);
  return sum / static_cast<double>(total);
}

}  // namespace ghk

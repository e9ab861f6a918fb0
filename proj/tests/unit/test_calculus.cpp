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
#include <chrono>
#include <cmath>

#include "doctest.h"
#include "ghk/calculus.hpp"
#include "ghk/errors.hpp"
#include "ghk/random.hpp"

using namespace ghk;

namespace {

const std::set<std::string> kSymbols{"alpha", "beta"};
FormalScalar lit(const char* s) { return FormalScalar::parse(s, kSymbols); }
Frequency freq(std::initializer_list<long> k) {
  Frequency out;
  for (long v : k) out.emplace_back(v);
  return out;
}
TrigPolynomial chi(std::initializer_list<long> k) { return TrigPolynomial::character(freq(k)); }
const SymbolTable& symbols() {
  static const SymbolTable t = SymbolTable::defaults();
  return t;
}

// Independent brute force: ||f||_{U^2}^4 on Z_N, step 1, straight from the
// definition with explicit loops.
double u2_fourth_brute(const CyclicFunction& f) {
  const long N = static_cast<long>(f.size());
  Complex acc = 0.0;
  for (long x = 0; x < N; ++x)
    for (long a = 0; a < N; ++a)
      for (long b = 0; b < N; ++b)
        acc += f[x] * std::conj(f[(x + a) % N]) * std::conj(f[(x + b) % N]) * f[(x + a + b) % N];
  return acc.real() / static_cast<double>(N * N * N);
}

}  // namespace

TEST_CASE("multiplicative derivative on Z_8") {
  CyclicSystem sys(8, 1);
  auto d = mult_derivative(sys, character(sys, 1), {3});
  for (const auto& v : d) CHECK(std::abs(v - unit(-3.0 / 8.0)) < 1e-15);
  auto one = mult_derivative(sys, CyclicFunction(8, 1.0), {2, 5});
  for (const auto& v : one) CHECK(v == Complex(1.0));
  CHECK(mult_derivative(sys, character(sys, 3), {}) == character(sys, 3));
}

TEST_CASE("constant function has unit seminorms") {
  CyclicSystem sys(16, 3);
  CyclicFunction one(16, 1.0);
  for (unsigned s = 0; s <= 4; ++s) {
    CHECK(std::abs(seminorm_power(sys, one, s) - 1.0) < 1e-12);
    CHECK(seminorm_root(seminorm_power_definition(sys, one, s), s) == doctest::Approx(1.0));
  }
  auto sk = quadratic_skew(lit("alpha"));
  for (unsigned s = 0; s <= 3; ++s)
    CHECK(gowers_seminorm_symbolic(sk, TrigPolynomial::constant(2, ExactComplex(1)), s, symbols()).power == ExactComplex(1));
}

TEST_CASE("definition and recursion agree") {
  SplitMix64 rng(99);
  std::vector<CyclicSystem> systems{CyclicSystem(8, 1), CyclicSystem(12, 4), CyclicSystem(9, 2),
                                    CyclicSystem(std::vector<CyclicSystem::Factor>{{4, 1}, {2, 1}})};
  for (const auto& sys : systems)
    for (int trial = 0; trial < 3; ++trial) {
      auto f = random_bounded(sys.size(), rng);
      for (unsigned s = 0; s <= 3; ++s)
        CHECK(std::abs(seminorm_power(sys, f, s) - seminorm_power_definition(sys, f, s)) < 1e-12);
      for (unsigned s = 1; s <= 3; ++s) {
        auto a = dual_function(sys, f, s), b = dual_definition(sys, f, s);
        CHECK(l2_distance(a, b) < 1e-12);
      }
    }
}

TEST_CASE("definition mode against an independent loop") {
  SplitMix64 rng(4);
  CyclicSystem sys(10, 1);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_bounded(10, rng);
    CHECK(std::abs(seminorm_power_definition(sys, f, 2).real() - u2_fourth_brute(f)) < 1e-12);
  }
}

TEST_CASE("u2 via FFT") {
  CyclicSystem z8(8, 1);
  CHECK(u2_via_fft(z8, CyclicFunction(8, 1.0)) == doctest::Approx(1.0));
  CHECK(u2_via_fft(z8, character(z8, 1)) == doctest::Approx(1.0));
  CHECK(std::pow(u2_fourth_brute(character(z8, 1)), 0.25) == doctest::Approx(1.0));
  SplitMix64 rng(12);
  CyclicSystem z64(64, 5);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_bounded(64, rng);
    CHECK(std::abs(u2_via_fft(z64, f) - seminorm_root(seminorm_power_definition(z64, f, 2), 2)) < 1e-9);
  }
  CHECK_THROWS_AS(u2_via_fft(CyclicSystem(8, 2), character(z8, 1)), PreconditionError);
}

TEST_CASE("ergodic degree one is the modulus of the mean") {
  SplitMix64 rng(8);
  CyclicSystem sys(21, 5);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_bounded(21, rng);
    CHECK(std::abs(seminorm_root(seminorm_power(sys, f, 1), 1) - std::abs(integral(sys, f))) < 1e-9);
  }
}

TEST_CASE("dual identity and conjugation equivariance on Z_N") {
  SplitMix64 rng(31);
  for (auto [N, r] : std::vector<std::pair<int, int>>{{16, 1}, {12, 3}, {15, 2}}) {
    CyclicSystem sys(N, r);
    for (int trial = 0; trial < 3; ++trial) {
      auto f = random_bounded(N, rng);
      for (unsigned s = 1; s <= 3; ++s) {
        auto d = dual_function(sys, f, s);
        CHECK(std::abs(integral(sys, multiply(f, d)) - seminorm_power(sys, f, s)) < 1e-9);
        CHECK(l2_distance(dual_function(sys, conj(f), s), conj(d)) < 1e-13);
      }
    }
  }
}

TEST_CASE("truncated cyclic averages converge to the exact value over full periods") {
  SplitMix64 rng(3);
  CyclicSystem sys(6, 1);
  auto f = random_bounded(6, rng);
  // H a multiple of the period reproduces the exact average.
  CHECK(std::abs(seminorm_power_truncated(sys, f, 2, 12) - seminorm_power(sys, f, 2)) < 1e-12);
  CHECK(l2_distance(dual_truncated(sys, f, 2, 6), dual_function(sys, f, 2)) < 1e-12);
}

TEST_CASE("symbolic derivative of e(x2)") {
  auto sys = quadratic_skew(lit("alpha"));
  auto h = RationalPolynomial::variable("h1");
  auto d = mult_derivative(sys, SymbolicTrig::from(chi({0, 1})), {h});
  REQUIRE(d.size() == 1);
  const auto& key = d.terms().begin()->first;
  CHECK(key.frequency[0] == h.scaled(Rational(-2)));
  CHECK(key.frequency[1].is_zero());
  CHECK(key.phase == (to_phase(h * h) * PhasePolynomial(lit("-alpha"))));
}

TEST_CASE("symbolic seminorms on the skew system") {
  auto sys = quadratic_skew(lit("alpha"));
  auto e2 = gowers_seminorm_symbolic(sys, chi({0, 1}), 2, symbols());
  CHECK(e2.exact_zero);
  CHECK(e2.value == 0.0);
  CHECK(gowers_seminorm_symbolic(sys, chi({0, 1}), 3, symbols()).power == ExactComplex(1));
  CHECK(gowers_seminorm_symbolic(sys, chi({1, 0}), 1, symbols()).exact_zero);
  CHECK(gowers_seminorm_symbolic(sys, chi({1, 0}), 2, symbols()).power == ExactComplex(1));
  // Truncated counterpart, compared on the seminorm powers.
  NumericAffine num(sys, symbols());
  auto x1 = NumTrig::from_exact(chi({1, 0}), symbols());
  CHECK(std::abs(seminorm_power_truncated(num, x1, 1, 256)) < 1e-2);
  CHECK(std::abs(seminorm_power_truncated(num, x1, 2, 256) - 1.0) < 1e-12);
  // A rational rotation is not ergodic: e(3 x1) is invariant.
  auto rational = quadratic_skew(lit("1/3"));
  CHECK(gowers_seminorm_symbolic(rational, chi({1, 0}), 1, symbols()).exact_zero);
  CHECK(gowers_seminorm_symbolic(rational, chi({3, 0}), 1, symbols()).power == ExactComplex(1));
}

TEST_CASE("symbolic duals on the skew system") {
  auto sys = quadratic_skew(lit("alpha"));
  CHECK(dual_symbolic(sys, chi({1, 0}), 2) == chi({-1, 0}));
  CHECK(dual_symbolic(sys, chi({0, 1}), 2).is_zero());
  CHECK(dual_symbolic(sys, chi({0, 1}), 3) == chi({0, -1}));
  CHECK(dual_symbolic(sys, chi({1, 0}), 1).is_zero());
  CHECK(dual_symbolic(sys, TrigPolynomial::constant(2, ExactComplex(1)), 3) == TrigPolynomial::constant(2, ExactComplex(1)));
  // Dual identity: int f D_2 f = [[f]]_2^4.
  auto f = chi({1, 0}) + chi({0, 1}).scaled(ExactComplex(make_rational(1, 2)));
  for (unsigned s = 1; s <= 3; ++s) {
    auto d = dual_symbolic(sys, f, s);
    CHECK(integral(f * d) == gowers_seminorm_symbolic(sys, f, s, symbols()).power);
    CHECK(dual_symbolic(sys, f.conj(), s) == d.conj());
  }
  NumericAffine num(sys, symbols());
  auto nf = NumTrig::from_exact(chi({1, 0}), symbols());
  CHECK(l2_distance(dual_truncated(num, nf, 2, 64), NumTrig::from_exact(chi({-1, 0}), symbols())) < 1e-12);
}

TEST_CASE("seminorm root guards") {
  CHECK(seminorm_root(Complex(-1e-13, 0), 2) == 0.0);
  CHECK_THROWS_AS(seminorm_root(Complex(-1e-3, 0), 2), InconsistencyError);
  CHECK_THROWS_AS(seminorm_root(Complex(0.5, 1e-3), 1), InconsistencyError);
  CHECK(seminorm_root(Complex(0, -2), 0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(seminorm_power(CyclicSystem(4, 1), CyclicFunction(4, 1.0), 7), ResourceError);
}

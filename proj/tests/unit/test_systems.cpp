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
#include <cmath>
#include <random>

#include "doctest.h"
#include "ghk/errors.hpp"
#include "ghk/random.hpp"
#include "ghk/symbolic.hpp"

using namespace ghk;

namespace {

const std::set<std::string> kSymbols{"alpha", "beta"};
FormalScalar lit(const char* s) { return FormalScalar::parse(s, kSymbols); }
Frequency freq(std::initializer_list<long> k) {
  Frequency out;
  for (long v : k) out.emplace_back(v);
  return out;
}
RationalPolynomial var(const char* v) { return RationalPolynomial::variable(v); }

TrigPolynomial random_trig(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> k(-3, 3), num(-4, 4), den(1, 6);
  TrigPolynomial t(dim);
  for (int i = 0; i < 3; ++i) {
    Frequency f;
    for (std::size_t j = 0; j < dim; ++j) f.emplace_back(k(rng));
    t.add_term(f, ExactComplex::exp(FormalScalar(make_rational(num(rng), den(rng))), make_rational(num(rng), den(rng))));
  }
  return t;
}

}  // namespace

TEST_CASE("cyclic iterate follows composition") {
  CyclicSystem sys(8, 1);
  auto f = indicator(sys, {0});
  auto g = apply_iterate(sys, f, 3);
  // (T^3 f)(x) = f(x + 3): the indicator of {0} moves to {5}.
  CHECK(g == indicator(sys, {5}));
  CHECK(apply_iterate(sys, CyclicFunction(8, 1.0), 5) == CyclicFunction(8, 1.0));
}

TEST_CASE("cyclic iterate laws on random data") {
  SplitMix64 rng(5);
  for (auto [N, r] : std::vector<std::pair<int, int>>{{8, 1}, {12, 4}, {30, 7}}) {
    CyclicSystem sys(N, r);
    auto f = random_bounded(N, rng);
    for (int m = -3; m < 9; m += 4)
      for (int n = 0; n < 20; n += 7) {
        CHECK(apply_iterate(sys, f, m + n) == apply_iterate(sys, apply_iterate(sys, f, n), m));
        CHECK(std::abs(integral(sys, apply_iterate(sys, f, n)) - integral(sys, f)) < 1e-12);
      }
    auto g = random_bounded(N, rng);
    CHECK(sup_norm(multiply(f, g)) <= sup_norm(f) * sup_norm(g) + 1e-15);
  }
  CyclicSystem prod(std::vector<CyclicSystem::Factor>{{4, 1}, {6, 5}});
  CHECK(prod.size() == 24);
  CHECK(prod.period() == 12);
  CHECK_FALSE(prod.is_ergodic());
  CHECK(CyclicSystem(std::vector<CyclicSystem::Factor>{{4, 1}, {3, 1}}).is_ergodic());
  auto f = random_bounded(24, rng);
  CHECK(apply_iterate(prod, f, 12) == f);
  CHECK(apply_iterate(prod, apply_iterate(prod, f, 5), 2) == apply_iterate(prod, f, 7));
}

TEST_CASE("cyclic integral and tensor") {
  CyclicSystem sys(4, 1);
  CyclicFunction f{1.0, Complex(0, 1), -1.0, Complex(0, -1)};
  CHECK(std::abs(integral(sys, f)) < 1e-15);
  CHECK(integral(sys, CyclicFunction(4, 1.0)) == Complex(1.0));
  CyclicFunction h{1.0, -1.0};
  CHECK(tensor(h, h) == CyclicFunction{1.0, -1.0, -1.0, 1.0});
  CyclicFunction z{Complex(0, 1), 1.0};
  CyclicFunction expected{Complex(0, 1) * Complex(0, -1), Complex(0, 1), Complex(0, -1), 1.0};
  CHECK(tensor(z, z) == expected);
  CHECK_THROWS_AS(multiply(f, h), InvalidArgument);
}

TEST_CASE("affine construction checks unipotency") {
  CHECK_NOTHROW(quadratic_skew(lit("alpha")));
  CHECK_THROWS_AS(AffineSystem({{Integer(2), Integer(0)}, {Integer(0), Integer(1)}}, {lit("alpha"), lit("0")}),
                  InvalidArgument);
  CHECK_THROWS_AS(AffineSystem({{Integer(1), Integer(1)}, {Integer(1), Integer(1)}}, {lit("alpha"), lit("0")}),
                  InvalidArgument);
  // A 3x3 Jordan block, (A - I)^2 != 0 but (A - I)^3 = 0.
  AffineSystem j({{Integer(1), Integer(0), Integer(0)}, {Integer(1), Integer(1), Integer(0)}, {Integer(0), Integer(1), Integer(1)}},
                 {lit("alpha"), lit("0"), lit("0")});
  CHECK(j.nilpotent_powers().size() == 3);
}

TEST_CASE("symbolic iterate of e(l x2) on the skew system") {
  auto sys = quadratic_skew(lit("alpha"));
  auto n = var("n");
  for (long l : {1L, 2L, -3L}) {
    auto f = SymbolicTrig::from(TrigPolynomial::character(freq({0, l})));
    auto g = apply_iterate(sys, f, n);
    REQUIRE(g.size() == 1);
    const auto& key = g.terms().begin()->first;
    CHECK(key.frequency[0] == n.scaled(Rational(2 * l)));
    CHECK(key.frequency[1] == RationalPolynomial(Rational(l)));
    CHECK(key.phase == reduce_phase((n * n) * PhasePolynomial(FormalScalar::symbol("alpha", Rational(l)))));
    CHECK(g.terms().begin()->second == Rational(1));
  }
  auto one = SymbolicTrig::constant(2);
  CHECK(apply_iterate(sys, one, n * n + n) == one);
}

TEST_CASE("exact affine iterates compose and preserve the integral") {
  std::mt19937_64 rng(17);
  AffineSystem j({{Integer(1), Integer(0), Integer(0)}, {Integer(1), Integer(1), Integer(0)}, {Integer(3), Integer(-2), Integer(1)}},
                 {lit("alpha"), lit("1/3 + beta"), lit("alpha/2")});
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_trig(rng, 3);
    const long m = static_cast<long>(rng() % 13) - 6, n = static_cast<long>(rng() % 13) - 6;
    auto lhs = apply_iterate(j, f, Integer(m + n));
    auto rhs = apply_iterate(j, apply_iterate(j, f, Integer(n)), Integer(m));
    CHECK(lhs == rhs);
    CHECK(integral(apply_iterate(j, f, Integer(n))) == integral(f));
  }
  // Closed form against repeated single steps.
  auto f = random_trig(rng, 3);
  auto stepped = f;
  for (int k = 0; k < 9; ++k) stepped = apply_iterate(j, stepped, Integer(1));
  CHECK(stepped == apply_iterate(j, f, Integer(9)));
  auto back = apply_iterate(j, apply_iterate(j, f, Integer(-1)), Integer(1));
  CHECK(back == f);
}

TEST_CASE("symbolic iterate specializes to the concrete one") {
  std::mt19937_64 rng(23);
  auto sys = quadratic_skew(lit("alpha"));
  auto n = var("n");
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_trig(rng, 2);
    auto g = apply_iterate(sys, SymbolicTrig::from(f), n * n - n.scaled(Rational(3)));
    for (long v : {-2L, 0L, 1L, 5L}) {
      auto num = g.evaluate({{"n", v}}, SymbolTable::defaults());
      auto exact = NumTrig::from_exact(apply_iterate(sys, f, Integer(v * v - 3 * v)), SymbolTable::defaults());
      CHECK(l2_distance(num, exact) < 1e-12);
    }
  }
}

TEST_CASE("numeric affine iterate matches the exact one") {
  std::mt19937_64 rng(29);
  AffineSystem j({{Integer(1), Integer(0), Integer(0)}, {Integer(1), Integer(1), Integer(0)}, {Integer(3), Integer(-2), Integer(1)}},
                 {lit("alpha"), lit("1/3 + beta"), lit("alpha/2")});
  auto symbols = SymbolTable::defaults();
  NumericAffine num(j, symbols);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_trig(rng, 3);
    for (long n : {-40L, -1L, 0L, 3L, 1000L, 2000000L}) {
      auto exact = NumTrig::from_exact(apply_iterate(j, f, Integer(n)), symbols);
      CHECK(l2_distance(num.apply_iterate(NumTrig::from_exact(f, symbols), n), exact) < 1e-9);
    }
  }
}

TEST_CASE("trig pointwise operations") {
  auto x2 = TrigPolynomial::character(freq({0, 1}), ExactComplex::exp(lit("1/3"), 2));
  auto c = x2.conj();
  CHECK(c.terms().begin()->first == freq({0, -1}));
  CHECK(c.terms().begin()->second == ExactComplex::exp(lit("-1/3"), 2));
  auto prod = TrigPolynomial::character(freq({1, 0})) * TrigPolynomial::character(freq({0, 1}));
  CHECK(prod == TrigPolynomial::character(freq({1, 1})));
  CHECK(integral(TrigPolynomial::character(freq({0, 1}))).is_structural_zero());
  CHECK(integral(TrigPolynomial::constant(2, ExactComplex(1))) == ExactComplex(1));
  auto t = tensor(TrigPolynomial::character(freq({1, 2})), TrigPolynomial::character(freq({3, 0})));
  CHECK(t == TrigPolynomial::character(freq({1, 2, -3, 0})));
}

TEST_CASE("term cap aborts growth") {
  TrigPolynomial big(1);
  for (long k = 0; k < 1001; ++k) big.add_term(freq({k}), ExactComplex(1));
  CHECK_THROWS_AS(big * big, ResourceError);
}

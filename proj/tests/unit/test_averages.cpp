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
#include "doctest.h"
#include "ghk/averages.hpp"
#include "ghk/errors.hpp"
#include "ghk/expected.hpp"
#include "ghk/random.hpp"

using namespace ghk;

namespace {

const std::set<std::string> kSymbols{"alpha", "beta"};
FormalScalar lit(const char* s) { return FormalScalar::parse(s, kSymbols); }
TrigPolynomial chi(long a, long b) { return TrigPolynomial::character({Integer(a), Integer(b)}); }
const SymbolTable& symbols() {
  static const SymbolTable t = SymbolTable::defaults();
  return t;
}
IntegerSequence poly(std::vector<std::int64_t> c) { return IntegerSequence::polynomial(std::move(c)); }
const ExpectedValue& expected(const char* check) { return ExpectedTable::builtin().at("averages", check); }

AverageSpec linear(std::vector<IntegerSequence> seqs, std::int64_t N) {
  AverageSpec s;
  s.sequences = std::move(seqs);
  s.N = N;
  return s;
}

}  // namespace

TEST_CASE("constant functions average to one") {
  CyclicSystem sys(10, 3);
  auto r = multiple_average(sys, {CyclicFunction(10, 1.0), CyclicFunction(10, 1.0)}, linear({poly({0, 1}), poly({0, 0, 1})}, 37));
  CHECK(r.l2_norm == doctest::Approx(1.0));
  for (auto v : r.function) CHECK(std::abs(v - 1.0) < 1e-14);
  NumericAffine aff(quadratic_skew(lit("alpha")), symbols());
  auto one = NumTrig::constant(2, 1.0);
  auto a = multiple_average(aff, {one}, linear({poly({0, 1})}, 64));
  CHECK(a.l2_norm == doctest::Approx(1.0));
}

TEST_CASE("identity iterates and full-period characters") {
  SplitMix64 rng(2);
  CyclicSystem sys(7, 2);
  auto f = random_bounded(7, rng), g = random_bounded(7, rng);
  auto r = multiple_average(sys, {f, g}, linear({poly({0, 7}), poly({0, 14})}, 20));
  CHECK(l2_distance(r.function, multiply(f, g)) < 1e-14);
  CyclicSystem z8(8, 1);
  CHECK(multiple_average(z8, {character(z8, 1)}, linear({poly({0, 1})}, 8)).l2_norm < 1e-15);
}

TEST_CASE("symbolic multiple averages on the skew system") {
  auto sys = quadratic_skew(lit("alpha"));
  auto n = poly({0, 1});
  CHECK(multiple_average_symbolic(sys, {n}, {chi(1, 0)}).is_zero());
  CHECK(multiple_average_symbolic(sys, {n}, {TrigPolynomial::constant(2, ExactComplex(1))}) ==
        TrigPolynomial::constant(2, ExactComplex(1)));
  AverageCensus census;
  CHECK(multiple_average_symbolic(sys, {n}, {chi(0, 1)}, &census).is_zero());
  CHECK(census.dropped_frequency == 1);
  NumericAffine num(sys, symbols());
  CHECK(multiple_average(num, {NumTrig::from_exact(chi(0, 1), symbols())}, linear({n}, 512)).l2_norm < 0.1);
  // T^n e(x1) T^n e(-x1) = 1 and T^n e(x1) T^{2n} e(-x1) = e(-n alpha).
  CHECK(multiple_average_symbolic(sys, {n, n}, {chi(1, 0), chi(-1, 0)}) == TrigPolynomial::constant(2, ExactComplex(1)));
  CHECK(multiple_average_symbolic(sys, {n, poly({0, 2})}, {chi(1, 0), chi(-1, 0)}).is_zero());
  CHECK_THROWS_AS(multiple_average_symbolic(sys, {IntegerSequence::table({1, 2})}, {chi(1, 0)}), UnsupportedError);
}

TEST_CASE("cubic averages") {
  CyclicSystem z8(8, 1);
  std::vector<CyclicFunction> ones(3, CyclicFunction(8, 1.0));
  for (auto v : cubic_average(z8, ones, 2, 5)) CHECK(std::abs(v - 1.0) < 1e-14);
  SplitMix64 rng(9);
  CyclicSystem sys(11, 4);
  auto f = random_bounded(11, rng);
  auto ergodic = multiple_average(sys, {f}, linear({poly({0, 1})}, 13)).function;
  CHECK(l2_distance(cubic_average(sys, {f}, 1, 13), ergodic) < 1e-15);
  std::vector<CyclicFunction> chis(3, character(z8, 1));
  CHECK(expected("cubic_z8_norm").accepts(l2_norm(cubic_average(z8, chis, 2, 8))));
  CHECK_THROWS_AS(cubic_average(z8, std::vector<CyclicFunction>(31, CyclicFunction(8, 1.0)), 5, 2), ResourceError);
  CHECK_THROWS_AS(cubic_average(z8, ones, 3, 2), InvalidArgument);
}

TEST_CASE("square versus double linear averages") {
  CyclicSystem sys(16, 1);
  CyclicFunction one(16, 1.0);
  CHECK(square_vs_double_linear(sys, poly({0, 1}), poly({0, 0, 1}), one, one, one, 20).distance < 1e-14);
  SplitMix64 rng(5);
  auto f1 = random_bounded(16, rng), f2 = random_bounded(16, rng), f3 = random_bounded(16, rng);
  auto cmp = square_vs_double_linear(sys, poly({0, 1}), poly({0, 0, 1}), f1, f2, f3, 64);
  CHECK(expected("square_distance").accepts(cmp.distance));
}

TEST_CASE("recurrence averages") {
  CyclicSystem z12(12, 1);
  std::vector<std::int64_t> all(12);
  for (int i = 0; i < 12; ++i) all[i] = i;
  CHECK(recurrence_average(z12, all, poly({0, 1}), {1, 2}, 30) == doctest::Approx(1.0));
  CHECK(recurrence_average(z12, {3, 5, 8}, poly({0, 12}), {1}, 10) == doctest::Approx(0.25));
  CHECK(expected("recurrence_z12").accepts(recurrence_average(z12, {0, 1}, poly({0, 1}), {1}, 12)));
  CHECK_THROWS_AS(recurrence_average(z12, {}, poly({0, 1}), {1}, 12), InvalidArgument);
}

TEST_CASE("convergence tables") {
  CyclicSystem sys(9, 1);
  auto constant = convergence_table([&](std::int64_t N) {
    return multiple_average(sys, {CyclicFunction(9, 1.0)}, linear({poly({0, 1})}, N)).l2_norm;
  });
  REQUIRE(constant.size() == kDefaultConvergenceNs.size());
  for (const auto& row : constant) CHECK(row.value == constant.front().value);
  CHECK(convergence_table([](std::int64_t) { return 0.0; }, {}).empty());
  CHECK_THROWS_AS(convergence_table([](std::int64_t) { return 0.0; }, {4, 4}), InvalidArgument);
  NumericAffine num(quadratic_skew(lit("alpha")), symbols());
  auto x1 = NumTrig::from_exact(chi(1, 0), symbols());
  auto rows = convergence_table([&](std::int64_t N) { return multiple_average(num, {x1}, linear({poly({0, 1})}, N)).l2_norm; });
  CHECK(rows.back().value < 0.1);
}

TEST_CASE("weights and Følner boxes") {
  SplitMix64 rng(17);
  CyclicSystem sys(12, 5);
  auto f = random_bounded(12, rng), g = random_bounded(12, rng);
  auto plain = multiple_average(sys, {f, g}, linear({poly({0, 1}), poly({0, 0, 1})}, 40)).function;
  AverageSpec box;
  box.box = FolnerBox{{1}, {40}};
  box.box_variables = {"n"};
  auto n = RationalPolynomial::variable("n");
  box.box_sequences = {n, n * n};
  box.weights.assign(40, 1.0);
  CHECK(l2_distance(multiple_average(sys, {f, g}, box).function, plain) < 1e-15);

  // Two-dimensional box against an explicit loop.
  AverageSpec two;
  two.box = FolnerBox{{-2, 3}, {5, 4}};
  two.box_variables = {"u", "v"};
  auto u = RationalPolynomial::variable("u"), v = RationalPolynomial::variable("v");
  two.box_sequences = {u + v, (u * v) + binomial(u, 2)};
  CyclicFunction manual(12, 0.0);
  for (long a = -2; a < 3; ++a)
    for (long b = 3; b < 7; ++b) {
      auto s1 = apply_iterate(sys, f, a + b), s2 = apply_iterate(sys, g, a * b + a * (a - 1) / 2);
      for (int x = 0; x < 12; ++x) manual[x] += s1[x] * s2[x] / 20.0;
    }
  CHECK(l2_distance(multiple_average(sys, {f, g}, two).function, manual) < 1e-14);

  // Triangle inequality bound with weights |w| <= W.
  for (int trial = 0; trial < 20; ++trial) {
    AverageSpec w = linear({poly({0, 1}), poly({0, 3})}, 25);
    w.weight_bound = 0.7;
    for (int i = 0; i < 25; ++i) w.weights.push_back(0.7 * rng.uniform() * unit(rng.uniform()));
    auto r = multiple_average(sys, {f, g}, w);
    CHECK(r.l2_norm <= sup_norm(f) * sup_norm(g) * 0.7 + 1e-12);
  }
  AverageSpec over = linear({poly({0, 1})}, 2);
  over.weights = {1.0, 2.0};
  CHECK_THROWS_AS(multiple_average(sys, {f}, over), InvalidArgument);
  box.box_sequences = {n.scaled(make_rational(1, 2)), n};
  CHECK_THROWS_AS(multiple_average(sys, {f, g}, box), InvalidArgument);
}

TEST_CASE("product trick") {
  SplitMix64 rng(23);
  for (auto [N, r] : std::vector<std::pair<int, int>>{{8, 1}, {12, 4}, {15, 7}}) {
    CyclicSystem sys(N, r);
    auto sq = sys.product(sys);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<CyclicFunction> fs, ts;
      std::vector<std::int64_t> ks;
      for (int j = 0; j < 3; ++j) {
        fs.push_back(random_bounded(N, rng));
        ts.push_back(tensor(fs.back(), fs.back()));
        ks.push_back(static_cast<std::int64_t>(rng.below(50)) - 25);
      }
      CyclicFunction lhs(N, 1.0), rhs(N * N, 1.0);
      for (int j = 0; j < 3; ++j) {
        lhs = multiply(lhs, apply_iterate(sys, fs[j], ks[j]));
        rhs = multiply(rhs, apply_iterate(sq, ts[j], ks[j]));
      }
      CHECK(std::abs(std::norm(integral(sys, lhs)) - integral(sq, rhs)) < 1e-12);

      AverageSpec w = linear({poly({0, 1}), poly({0, 0, 1}), poly({3, 2})}, 30);
      for (int i = 0; i < 30; ++i) w.weights.push_back(rng.uniform() * unit(rng.uniform()));
      const double a = multiple_average(sys, fs, w).l2_norm;
      AverageSpec unweighted = w;
      unweighted.weights.clear();
      const double b = multiple_average(sq, ts, unweighted).l2_norm;
      CHECK(a * a <= b + 1e-9);
    }
  }
}

TEST_CASE("exact Parseval distance") {
  auto f = chi(1, 0) + chi(0, 1).scaled(ExactComplex::i());
  auto g = chi(1, 0).scaled(ExactComplex(make_rational(1, 2)));
  CHECK(l2_distance_squared(f, g) == ExactComplex(make_rational(5, 4)));
  CHECK(l2_distance_squared(f, f).is_structural_zero());
}

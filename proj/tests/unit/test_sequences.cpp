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
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "ghk/errors.hpp"
#include "ghk/expected.hpp"
#include "ghk/sequences.hpp"

using namespace ghk;

namespace {

const NumericReal& alpha() {
  static const NumericReal a = NumericReal::parse("sqrt(2) - 1");
  return a;
}

const ExpectedValue& expected(const char* check) { return ExpectedTable::builtin().at("sequences", check); }

IntegerSequence identity() { return IntegerSequence::polynomial({0, 1}); }
IntegerSequence squares() { return IntegerSequence::polynomial({0, 0, 1}); }

}  // namespace

TEST_CASE("evaluation of the basic kinds") {
  CHECK(eval_sequence(squares(), 5) == 25);
  CHECK(eval_sequence(IntegerSequence::table({4, 7, 9}), 2) == 7);
  CHECK_THROWS_AS(eval_sequence(IntegerSequence::table({4, 7, 9}), 4), InvalidArgument);
  CHECK_THROWS_AS(eval_sequence(squares(), 0), InvalidArgument);
  CHECK(eval_sequence(IntegerSequence::polynomial({1, -3, 0, 2}), 3) == 46);
  CHECK_THROWS_AS(eval_sequence(IntegerSequence::polynomial({0, 0, 0, 0, 0, 1}), 100000), ResourceError);
}

TEST_CASE("floor-power against exact integer roots") {
  auto s = IntegerSequence::floor_power(NumericReal::parse("3/2"));
  auto r = eval_range(s, 2000);
  for (long n = 1; n <= 2000; ++n) {
    long k = r[n - 1];
    // k = floor(sqrt(n^3))  <=>  k^2 <= n^3 < (k+1)^2
    CHECK(k * k <= n * n * n);
    CHECK((k + 1) * (k + 1) > n * n * n);
  }
  auto sq = IntegerSequence::floor_power(NumericReal::parse("2"));
  CHECK(eval_sequence(sq, 99991) == 99991LL * 99991LL);
  // An irrational exponent; floor(n^sqrt(2)) checked against a long double.
  auto irr = IntegerSequence::floor_power(NumericReal::parse("sqrt(2)"));
  for (long n : {2L, 10L, 777L}) {
    long double v = std::pow(static_cast<long double>(n), std::sqrt(2.0L));
    CHECK(eval_sequence(irr, n) == static_cast<long long>(std::floor(v)));
  }
  CHECK(eval_sequence(irr, 1) == 1);
  CHECK(expected("floor_three_halves_even").accepts(divisibility_density(s, 2, 100000)));
}

TEST_CASE("indicator kind") {
  auto base = identity();
  auto a = IntegerSequence::indicator(base, {0, 0, 0, 1}, alpha(), 0, make_rational(1, 3));
  const auto want = expected("indicator_prefix").value;
  auto got = eval_range(a, static_cast<std::int64_t>(want.size()));
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i] == want[i].get<std::int64_t>());
  for (std::int64_t n = 1; n <= 500; ++n) {
    auto v = a(n);
    CHECK((v == 0 || v == n));
  }
}

TEST_CASE("enumeration kind") {
  auto e = IntegerSequence::enumeration(2, alpha(), make_rational(1, 4), make_rational(3, 4));
  const auto want = expected("enumeration_prefix").value;
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(e(static_cast<std::int64_t>(i) + 1) == want[i].get<std::int64_t>());
  auto r = eval_range(e, 10000);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK_UNARY(r[i] > r[i - 1]);
  for (auto m : r) {
    Turn t = wrap_u128(m) * wrap_u128(m) * alpha().turn();
    CHECK(compare_turn(t, make_rational(1, 4)) >= 0);
    CHECK(compare_turn(t, make_rational(3, 4)) <= 0);
  }
  auto tiny = IntegerSequence::enumeration(1, alpha(), make_rational(1, 4), make_rational(3, 4), 10);
  CHECK_THROWS_AS(eval_range(tiny, 100), ResourceError);
  auto d = empirical_distribution(e, alpha(), 1, 10000, 16);
  CHECK(expected("enumeration_linear_star").accepts(d.star_discrepancy));
}

TEST_CASE("prefix property") {
  for (const auto& s : {squares(), IntegerSequence::floor_power(NumericReal::parse("1.5")),
                        IntegerSequence::enumeration(3, alpha(), 0, make_rational(1, 2))}) {
    auto a = eval_range(s, 300), b = eval_range(s, 301);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }
}

TEST_CASE("table loading") {
  const char* path = "ghk_test_table.txt";
  {
    std::ofstream out(path);
    out << "# header\n4\n\n7  \n9 # tail\n";
  }
  auto t = IntegerSequence::table_from_file(path);
  CHECK(eval_range(t, 3) == std::vector<std::int64_t>{4, 7, 9});
  {
    std::ofstream out(path);
    out << "4 5\n";
  }
  CHECK_THROWS_AS(IntegerSequence::table_from_file(path), ConfigError);
  std::remove(path);
  CHECK_THROWS_AS(IntegerSequence::table_from_file("/nonexistent/table"), IoError);
}

TEST_CASE("weyl sums") {
  auto half = NumericReal(make_rational(1, 2));
  CHECK(std::abs(weyl_sum(identity(), half, 1000)) < 1e-12);
  CHECK(std::abs(weyl_sum(IntegerSequence::polynomial({0, 2}), half, 999) - Complex(1.0)) < 1e-12);
  CHECK(weyl_sum_limit(squares(), FormalScalar::symbol("alpha")).is_structural_zero());
  CHECK(weyl_sum_limit(IntegerSequence::polynomial({0, 2}), FormalScalar(make_rational(1, 2))) == ExactComplex(1));
  CHECK(weyl_sum_limit(identity(), FormalScalar(make_rational(1, 2))).is_structural_zero());
  CHECK_THROWS_AS(weyl_sum_limit(IntegerSequence::table({1}), FormalScalar(1)), UnsupportedError);
  for (std::int64_t N : {1, 7, 100})
    CHECK(std::abs(weyl_sum(IntegerSequence::floor_power(NumericReal::parse("1.3")), alpha(), N)) <= 1.0 + 1e-12);
}

TEST_CASE("empirical distributions") {
  auto d = empirical_distribution(identity(), NumericReal(make_rational(1, 2)), 1, 1000, 4);
  CHECK(d.frequencies == std::vector<double>{0.5, 0.0, 0.5, 0.0});
  CHECK(mass(d, 0, 0) == 0.5);
  CHECK(mass(d, make_rational(1, 2), make_rational(1, 2)) == 0.5);
  CHECK(mass(d, make_rational(1, 2), make_rational(1, 2), false) == 0.0);
  auto lin = empirical_distribution(identity(), alpha(), 1, 100000, 10);
  CHECK(lin.star_discrepancy < 0.01);
  CHECK(expected("star_nalpha").accepts(lin.star_discrepancy));
  for (std::int64_t N : {1, 2, 50}) {
    auto s = empirical_distribution(squares(), alpha(), 1, N, 3);
    CHECK(s.star_discrepancy >= 1.0 / (2.0 * N) - 1e-15);
    CHECK(s.star_discrepancy <= 1.0);
  }
  auto e = IntegerSequence::enumeration(2, alpha(), make_rational(1, 4), make_rational(3, 4));
  auto q = empirical_distribution(e, alpha(), 2, 10000, 4);
  CHECK(mass(q, make_rational(1, 4), make_rational(3, 4)) == 1.0);
  CHECK(q.frequencies[1] + q.frequencies[2] >= 0.99);
}

TEST_CASE("divisibility and Bohr densities") {
  CHECK(divisibility_density(identity(), 3, 300) == doctest::Approx(1.0 / 3.0));
  for (std::int64_t N : {1, 17, 1000}) CHECK(divisibility_density(IntegerSequence::polynomial({0, -1, 1}), 2, N) == 1.0);
  CHECK(bohr_recurrence_density(identity(), {NumericReal(make_rational(0))}, 0.01, 77) == 1.0);
  CHECK(bohr_recurrence_density(identity(), {NumericReal(make_rational(1, 2))}, 0.1, 1000) == 0.5);
  const double b = bohr_recurrence_density(squares(), {alpha()}, 0.05, 100000);
  CHECK(b > 0);
  CHECK(expected("bohr_squares").accepts(b));
  CHECK_THROWS_AS(divisibility_density(identity(), 0, 10), InvalidArgument);
}

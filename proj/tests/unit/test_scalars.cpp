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
#include <numbers>
#include <random>

#include "doctest.h"
#include "ghk/errors.hpp"
#include "ghk/weyl.hpp"

using namespace ghk;

namespace {

const std::set<std::string> kSymbols{"alpha", "beta"};

FormalScalar lit(const char* s) { return FormalScalar::parse(s, kSymbols); }

std::complex<double> e_of(long double t) {
  t -= std::floor(t);
  const long double a = 2.0L * std::numbers::pi_v<long double> * t;
  return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

PhasePolynomial var(const char* v) { return PhasePolynomial::variable(v); }

}  // namespace

TEST_CASE("field operations") {
  CHECK(lit("1/2 + alpha") + lit("1/2 - alpha") == FormalScalar(1));
  CHECK(FormalScalar(make_rational(3, 7)).is_rational());
  CHECK_FALSE(lit("alpha/2").is_rational());
  CHECK(lit("1/3 + alpha") * Rational(2) == lit("2/3 + 2*alpha"));
  CHECK(lit("alpha") * lit("3") == lit("3*alpha"));
  CHECK_THROWS_AS(lit("alpha") * lit("beta"), UnsupportedError);
  CHECK(lit("alpha - alpha").irrational_parts().empty());
  CHECK(-lit("1/3 - beta") == lit("-1/3 + beta"));
}

TEST_CASE("literal parsing and serialization") {
  CHECK(lit("0.25") == FormalScalar(make_rational(1, 4)));
  CHECK(lit("(1/3)*alpha + 2") == lit("2 + alpha/3"));
  CHECK(lit("-alpha") == FormalScalar::symbol("alpha", -1));
  CHECK(lit("1/3 + 2*alpha").to_string() == "1/3 + 2*alpha");
  CHECK(lit("-alpha/2 + beta").to_string() == "-1/2*alpha + beta");
  CHECK(FormalScalar().to_string() == "0");
  CHECK_THROWS_AS(lit("gamma"), ConfigError);
  CHECK_THROWS_AS(lit("alpha*beta"), ConfigError);
  CHECK_THROWS_AS(lit("1/"), ConfigError);
  CHECK_THROWS_AS(lit("1 / alpha"), ConfigError);
}

TEST_CASE("literal round trip on random scalars") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 30);
  for (int trial = 0; trial < 300; ++trial) {
    FormalScalar x(make_rational(num(rng), den(rng)));
    if (trial % 2) x += FormalScalar::symbol("alpha", make_rational(num(rng), den(rng)));
    if (trial % 3) x += FormalScalar::symbol("beta", make_rational(num(rng), den(rng)));
    CHECK(FormalScalar::parse(x.to_string(), kSymbols) == x);
  }
}

TEST_CASE("polynomial ring laws on random instances") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5), exp(0, 2), pick(0, 2);
  const char* names[] = {"n", "h", "m"};
  auto random_poly = [&] {
    RationalPolynomial p;
    for (int t = 0; t < 4; ++t) {
      Monomial m;
      for (int v = 0; v < 3; ++v)
        if (unsigned e = static_cast<unsigned>(exp(rng))) m.emplace_back(names[v], e);
      p.add_term(m, make_rational(coef(rng), 1 + pick(rng)));
    }
    return p;
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_poly(), b = random_poly(), c = random_poly();
    CHECK((a * b) * c == a * (b * c));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("binomial polynomials are integer valued") {
  auto n = RationalPolynomial::variable("n");
  auto c2 = binomial(n, 2);
  CHECK(c2.evaluate({{"n", 5}}) == Rational(10));
  CHECK(c2.evaluate({{"n", -2}}) == Rational(3));
  CHECK(is_integer_valued(c2));
  CHECK(is_integer_valued(binomial(n + RationalPolynomial::variable("h"), 3)));
  CHECK_FALSE(is_integer_valued(n.scaled(make_rational(1, 2))));
}

TEST_CASE("exact complex canonical form") {
  auto half = ExactComplex::exp(FormalScalar(make_rational(1, 2)));
  CHECK(half == ExactComplex(-1));
  CHECK((ExactComplex(1) + half).is_structural_zero());
  CHECK(ExactComplex::i() * ExactComplex::i() == ExactComplex(-1));
  auto z = ExactComplex::exp(lit("alpha + 1/3"), make_rational(2, 5));
  CHECK((z * z.conj()) == ExactComplex(make_rational(4, 25)));
  // 1 + e(1/3) + e(2/3) vanishes only through a cyclotomic relation.
  auto w = ExactComplex(1) + ExactComplex::exp(lit("1/3")) + ExactComplex::exp(lit("2/3"));
  CHECK_FALSE(w.is_structural_zero());
  auto t = test_zero(w, SymbolTable::defaults());
  CHECK(t.is_zero);
  CHECK(t.fired == ZeroTest::Fired::Numeric);
  CHECK(test_zero(ExactComplex(), SymbolTable::defaults()).fired == ZeroTest::Fired::Structural);
}

TEST_CASE("turn arithmetic is exact modulo one") {
  auto symbols = SymbolTable::defaults();
  // {n^3 alpha} for n = 99991, against a 200-digit reference computed here
  // through exact integer square roots.
  const long long n = 99991;
  Turn t = wrap_u128(n * n * n) * symbols.at("alpha").turn();
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 200);
  Integer root;
  Integer two_scaled = 2 * scale * scale;
  mpz_sqrt(root.get_mpz_t(), two_scaled.get_mpz_t());
  Integer value = Integer(std::to_string(n * n * n)) * (root - scale);
  Integer fractional;
  mpz_fdiv_r(fractional.get_mpz_t(), value.get_mpz_t(), scale.get_mpz_t());
  const double reference = Rational(fractional, scale).get_d();
  CHECK(std::abs(t.to_double() - reference) < 1e-15);
  CHECK(std::abs(NumericReal::parse("sqrt(2) - 1").value() - (std::sqrt(2.0) - 1.0)) < 3e-16);
  CHECK(NumericReal::parse("1/2*sqrt(4) + 1/3").value() == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("weyl_limit examples") {
  auto n = var("n");
  CHECK(weyl_limit(n * PhasePolynomial(lit("alpha"))).is_structural_zero());
  CHECK(weyl_limit(n * PhasePolynomial(lit("1/2"))).is_structural_zero());

  auto p = n * n * PhasePolynomial(lit("1/3")) + PhasePolynomial(lit("1/7"));
  auto w = weyl_limit(p);
  auto expected = (ExactComplex(1) + ExactComplex::exp(lit("1/3"), 2)).rotated(lit("1/7")).scaled(make_rational(1, 3));
  CHECK(w == expected);
  // Independent numeric truncation oracle, N = 1e5.
  std::complex<double> direct = 0.0;
  const long N = 100000;
  for (long k = 1; k <= N; ++k) direct += e_of(static_cast<long double>((k * k) % 3) / 3.0L + 1.0L / 7.0L);
  direct /= static_cast<double>(N);
  CHECK(std::abs(w.numeric(SymbolTable::defaults()) - direct) < 5e-3);
  CHECK(std::abs(std::abs(w.numeric(SymbolTable::defaults())) - 1.0 / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("weyl_limit shift covariance and boundedness") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 6), coin(0, 3);
  auto symbols = SymbolTable::defaults();
  for (int trial = 0; trial < 60; ++trial) {
    PhasePolynomial p;
    const char* vars[] = {"n", "m"};
    for (int t = 0; t < 3; ++t) {
      Monomial m;
      int v = coin(rng) % 2;
      m.emplace_back(vars[v], 1 + coin(rng) % 3);
      FormalScalar c(make_rational(num(rng), den(rng)));
      if (coin(rng) == 0) c += FormalScalar::symbol("alpha", make_rational(num(rng), den(rng)));
      p.add_term(monomial_product(m, {}), c);
    }
    FormalScalar shift = FormalScalar(make_rational(num(rng), den(rng))) + FormalScalar::symbol("beta", 1);
    CHECK(weyl_limit(p + PhasePolynomial(shift)) == weyl_limit(p).rotated(shift));
    CHECK(std::abs(weyl_limit(p).numeric(symbols)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("weyl_limit period cap") {
  auto n = var("n"), m = var("m"), k = var("k");
  auto p = (n * m * k) * PhasePolynomial(lit("1/1000"));
  CHECK_THROWS_AS(weyl_limit(p), ResourceError);
}

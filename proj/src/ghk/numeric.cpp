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
#include "ghk/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "ghk/errors.hpp"

namespace ghk {

namespace {

constexpr unsigned kFixedBits = 256;

Integer pow2(unsigned bits) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, bits);
  return out;
}

const Integer& fixed_one() {
  static const Integer one = pow2(kFixedBits);
  return one;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer rational_to_fixed(const Rational& r) { return floor_div(r.get_num() * fixed_one(), r.get_den()); }

/// Fixed-point value parser: sum of rational multiples of 1 and sqrt(K).
class RealParser {
 public:
  explicit RealParser(std::string_view text) : text_(text) {}

  Integer parse() {
    Integer v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  struct Term {
    Rational coefficient{1};
    Integer radical;  // fixed-point sqrt(K); zero means "no radical"
  };

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("real literal '" + std::string(text_) + "': " + why);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  Integer expr() {
    Integer acc = 0;
    int sign = 1;
    if (accept('-'))
      sign = -1;
    else
      accept('+');
    acc += sign * term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Integer term() {
    Term t;
    factor(t);
    for (;;) {
      if (accept('*')) {
        factor(t);
      } else if (accept('/')) {
        Term d;
        factor(d);
        if (sgn(d.radical) != 0 || sgn(d.coefficient) == 0) fail("division by a radical or zero");
        t.coefficient /= d.coefficient;
      } else {
        break;
      }
    }
    if (sgn(t.radical) == 0) return rational_to_fixed(t.coefficient);
    return floor_div(t.coefficient.get_num() * t.radical, t.coefficient.get_den());
  }

  void factor(Term& t) {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept_word("sqrt")) {
      if (!accept('(')) fail("expected '(' after sqrt");
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("sqrt takes a non-negative integer");
      Integer k(std::string(text_.substr(start, pos_ - start)));
      if (!accept(')')) fail("missing ')'");
      if (sgn(t.radical) != 0) fail("at most one sqrt per term");
      Integer scaled = k * fixed_one() * fixed_one();
      mpz_sqrt(t.radical.get_mpz_t(), scaled.get_mpz_t());
      if (sgn(t.radical) == 0) t.coefficient = 0;
      return;
    }
    if (accept('(')) {
      std::size_t start = pos_;
      int depth = 1;
      while (pos_ < text_.size() && depth) {
        if (text_[pos_] == '(') ++depth;
        if (text_[pos_] == ')') --depth;
        ++pos_;
      }
      if (depth) fail("missing ')'");
      // Parenthesised groups must be rational.
      t.coefficient *= parse_rational(text_.substr(start, pos_ - 1 - start));
      return;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '-' || text_[pos_] == '+') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      ++pos_;
    if (start == pos_) fail("expected a number or sqrt(K)");
    t.coefficient *= parse_rational(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

u128 wrap_u128(const Integer& z) {
  Integer r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), z.get_mpz_t(), 128);
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, r.get_mpz_t());
  return (static_cast<u128>(limbs[1]) << 64) | limbs[0];
}

Turn Turn::from_rational(const Rational& r) {
  static const Integer two128 = pow2(128);
  return {wrap_u128(floor_div(r.get_num() * two128, r.get_den()))};
}

Complex Turn::character() const { return unit(to_double()); }

Complex unit(double t) {
  t -= std::floor(t);
  const double a = 2.0 * std::numbers::pi * t;
  return {std::cos(a), std::sin(a)};
}

NumericReal::NumericReal(const Rational& r) : fixed_(rational_to_fixed(r)), literal_(to_string(r)) {
  value_ = r.get_d();
}

NumericReal::NumericReal(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("non-finite real");
  Rational r(v);
  fixed_ = rational_to_fixed(r);
  value_ = v;
  literal_ = to_string(r);
}

NumericReal NumericReal::parse(std::string_view text) {
  NumericReal out;
  out.fixed_ = RealParser(text).parse();
  out.value_ = Rational(out.fixed_, fixed_one()).get_d();
  out.literal_ = std::string(text);
  return out;
}

Turn NumericReal::scaled_turn(const Rational& c) const {
  Integer scaled = floor_div(c.get_num() * fixed_, c.get_den());
  mpz_fdiv_q_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), kFixedBits - 128);
  return {wrap_u128(scaled)};
}

SymbolTable SymbolTable::defaults() {
  SymbolTable t;
  t.set("alpha", NumericReal::parse("sqrt(2) - 1"));
  t.set("beta", NumericReal::parse("sqrt(3) - 1"));
  return t;
}

const NumericReal& SymbolTable::at(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw InvalidArgument("no numeric value for symbol '" + name + "'");
  return it->second;
}

std::set<std::string> SymbolTable::names() const {
  std::set<std::string> out;
  for (const auto& [n, _] : values_) out.insert(n);
  return out;
}

Turn SymbolTable::turn(const FormalScalar& x) const {
  Turn t = Turn::from_rational(x.rational_part());
  for (const auto& [name, c] : x.irrational_parts()) t += at(name).scaled_turn(c);
  return t;
}

double SymbolTable::value(const FormalScalar& x) const {
  double v = x.rational_part().get_d();
  for (const auto& [name, c] : x.irrational_parts()) v += c.get_d() * at(name).value();
  return v;
}

Turn evaluate_phase(const PhasePolynomial& p, const std::map<std::string, long long>& point,
                    const SymbolTable& symbols) {
  std::map<std::string, Integer> exact;
  for (const auto& [k, v] : point) exact[k] = Integer(static_cast<long>(v));
  Turn acc;
  for (const auto& [m, c] : p.terms()) acc += wrap_u128(monomial_value(m, exact)) * symbols.turn(c);
  return acc;
}

CompiledPhase::CompiledPhase(const PhasePolynomial& p, const std::vector<std::string>& order,
                             const SymbolTable& symbols) {
  for (const auto& [m, c] : p.terms()) {
    Term t;
    t.coefficient = symbols.turn(c);
    for (const auto& [v, e] : m) {
      auto it = std::find(order.begin(), order.end(), v);
      if (it == order.end()) throw InvalidArgument("phase variable '" + v + "' not in evaluation order");
      t.factors.emplace_back(static_cast<int>(it - order.begin()), e);
    }
    terms_.push_back(std::move(t));
  }
}

Turn CompiledPhase::operator()(const long long* values) const {
  Turn acc;
  for (const auto& t : terms_) {
    u128 m = 1;
    for (const auto& [idx, e] : t.factors) {
      const u128 v = wrap_u128(values[idx]);
      for (unsigned k = 0; k < e; ++k) m *= v;
    }
    acc += m * t.coefficient;
  }
  return acc;
}

}  // namespace ghk

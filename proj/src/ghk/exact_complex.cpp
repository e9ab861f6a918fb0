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
#include "ghk/exact_complex.hpp"

#include <sstream>

namespace ghk {

ExactComplex::ExactComplex(const Rational& r) { add(FormalScalar(), r); }

ExactComplex ExactComplex::exp(const FormalScalar& phase, const Rational& amplitude) {
  ExactComplex z;
  z.add(phase, amplitude);
  return z;
}

ExactComplex ExactComplex::i() { return exp(FormalScalar(make_rational(1, 4))); }

void ExactComplex::add(const FormalScalar& phase, const Rational& amplitude) {
  if (sgn(amplitude) == 0) return;
  static const Rational half = make_rational(1, 2);
  FormalScalar p = phase.mod_one();
  Rational a = amplitude;
  if (p.rational_part() >= half) {
    p -= FormalScalar(half);
    a = -a;
  }
  auto [it, inserted] = terms_.emplace(std::move(p), a);
  if (!inserted) {
    it->second += a;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

ExactComplex ExactComplex::conj() const {
  ExactComplex out;
  for (const auto& [p, a] : terms_) out.add(-p, a);
  return out;
}

ExactComplex ExactComplex::operator-() const {
  ExactComplex out;
  for (const auto& [p, a] : terms_) out.terms_.emplace(p, -a);
  return out;
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  for (const auto& [p, a] : o.terms_) add(p, a);
  return *this;
}

ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
  ExactComplex out;
  for (const auto& [pa, aa] : a.terms_)
    for (const auto& [pb, ab] : b.terms_) out.add(pa + pb, aa * ab);
  return out;
}

ExactComplex ExactComplex::scaled(const Rational& r) const {
  ExactComplex out;
  if (sgn(r) == 0) return out;
  for (const auto& [p, a] : terms_) out.terms_.emplace(p, a * r);
  return out;
}

ExactComplex ExactComplex::rotated(const FormalScalar& phase) const {
  ExactComplex out;
  for (const auto& [p, a] : terms_) out.add(p + phase, a);
  return out;
}

Complex ExactComplex::numeric(const SymbolTable& symbols) const {
  Complex acc = 0.0;
  for (const auto& [p, a] : terms_) acc += a.get_d() * symbols.turn(p).character();
  return acc;
}

std::string ExactComplex::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, a] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << ghk::to_string(a);
    if (!p.is_zero()) os << "*e(" << p.to_string() << ")";
  }
  return os.str();
}

ZeroTest test_zero(const ExactComplex& z, const SymbolTable& symbols, double tolerance) {
  ZeroTest t;
  if (z.is_structural_zero()) {
    t.is_zero = true;
    t.fired = ZeroTest::Fired::Structural;
    return t;
  }
  t.magnitude = std::abs(z.numeric(symbols));
  if (t.magnitude <= tolerance) {
    t.is_zero = true;
    t.fired = ZeroTest::Fired::Numeric;
  }
  return t;
}

const char* to_string(ZeroTest::Fired f) {
  switch (f) {
    case ZeroTest::Fired::Structural: return "structural";
    case ZeroTest::Fired::Numeric: return "numeric";
    case ZeroTest::Fired::NotZero: return "nonzero";
  }
  return "?";
}

}  // namespace ghk

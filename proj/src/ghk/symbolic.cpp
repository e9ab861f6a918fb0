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
#include "ghk/symbolic.hpp"

#include <sstream>

#include "ghk/errors.hpp"
#include "ghk/weyl.hpp"

namespace ghk {

namespace {

RationalPolynomial integer_poly(const Integer& z) { return RationalPolynomial(Rational(z)); }

}  // namespace

SymbolicTrig SymbolicTrig::constant(std::size_t dimension, const Rational& c) {
  SymbolicTrig t(dimension);
  t.add_term(FrequencyPoly(dimension), PhasePolynomial(), c);
  return t;
}

SymbolicTrig SymbolicTrig::from(const TrigPolynomial& f) {
  SymbolicTrig t(f.dimension());
  for (const auto& [k, c] : f.terms()) {
    FrequencyPoly kp;
    for (const auto& v : k) kp.push_back(integer_poly(v));
    for (const auto& [phase, amp] : c.terms()) t.add_term(kp, PhasePolynomial(phase), amp);
  }
  return t;
}

std::set<std::string> SymbolicTrig::variables() const {
  std::set<std::string> out;
  for (const auto& [key, _] : terms_) {
    for (const auto& k : key.frequency)
      for (const auto& v : k.variables()) out.insert(v);
    for (const auto& v : key.phase.variables()) out.insert(v);
  }
  return out;
}

void SymbolicTrig::add_term(FrequencyPoly k, const PhasePolynomial& phase, const Rational& amplitude) {
  if (k.size() != dim_) throw InvalidArgument("frequency dimension mismatch");
  if (sgn(amplitude) == 0) return;
  static const Rational half = make_rational(1, 2);
  PhasePolynomial p = reduce_phase(phase);
  Rational a = amplitude;
  if (p.constant_term().rational_part() >= half) {
    p -= PhasePolynomial(FormalScalar(half));
    a = -a;
  }
  auto [it, inserted] = terms_.emplace(Key{std::move(k), std::move(p)}, a);
  if (!inserted) {
    it->second += a;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

SymbolicTrig& SymbolicTrig::operator+=(const SymbolicTrig& o) {
  if (o.dim_ != dim_) throw InvalidArgument("sum of functions of different dimension");
  for (const auto& [key, a] : o.terms_) add_term(key.frequency, key.phase, a);
  if (terms_.size() > kTermCap) throw ResourceError("symbolic function exceeds term cap");
  return *this;
}

SymbolicTrig operator*(const SymbolicTrig& a, const SymbolicTrig& b) {
  if (a.dim_ != b.dim_) throw InvalidArgument("product of functions of different dimension");
  if (a.terms_.size() * b.terms_.size() > kTermCap)
    throw ResourceError("symbolic product would exceed the term cap of " + std::to_string(kTermCap));
  SymbolicTrig out(a.dim_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      SymbolicTrig::FrequencyPoly k(a.dim_);
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka.frequency[i] + kb.frequency[i];
      out.add_term(std::move(k), ka.phase + kb.phase, ca * cb);
    }
  return out;
}

SymbolicTrig SymbolicTrig::conj() const {
  SymbolicTrig out(dim_);
  for (const auto& [key, a] : terms_) {
    FrequencyPoly k;
    for (const auto& v : key.frequency) k.push_back(-v);
    out.add_term(std::move(k), -key.phase, a);
  }
  return out;
}

SymbolicTrig SymbolicTrig::scaled(const Rational& r) const {
  SymbolicTrig out(dim_);
  for (const auto& [key, a] : terms_) out.add_term(key.frequency, key.phase, a * r);
  return out;
}

SymbolicTrig SymbolicTrig::rotated(const PhasePolynomial& p) const {
  SymbolicTrig out(dim_);
  for (const auto& [key, a] : terms_) out.add_term(key.frequency, key.phase + p, a);
  return out;
}

TrigPolynomial SymbolicTrig::to_trig() const {
  TrigPolynomial out(dim_);
  for (const auto& [key, a] : terms_) {
    Frequency k;
    for (const auto& v : key.frequency) {
      if (!v.is_constant()) throw InvalidArgument("function still depends on parameters: " + to_string());
      const Rational c = v.constant_term();
      if (!is_integer(c)) throw InconsistencyError("non-integer frequency " + ghk::to_string(c));
      k.push_back(c.get_num());
    }
    if (!key.phase.is_constant()) throw InvalidArgument("function still depends on parameters: " + to_string());
    out.add_term(k, ExactComplex::exp(key.phase.constant_term(), a));
  }
  return out;
}

ExactComplex SymbolicTrig::to_scalar() const {
  if (dim_ != 0) {
    TrigPolynomial t = to_trig();
    if (t.terms().size() > 1 || (t.terms().size() == 1 && t.terms().begin()->first != Frequency(dim_, 0)))
      throw InvalidArgument("function is not constant");
    return integral(t);
  }
  ExactComplex out;
  for (const auto& [key, a] : terms_) {
    if (!key.phase.is_constant()) throw InvalidArgument("value still depends on parameters: " + to_string());
    out += ExactComplex::exp(key.phase.constant_term(), a);
  }
  return out;
}

NumTrig SymbolicTrig::evaluate(const std::map<std::string, long long>& point, const SymbolTable& symbols) const {
  std::map<std::string, Integer> exact;
  for (const auto& [k, v] : point) exact[k] = Integer(std::to_string(v));
  NumTrig out(dim_);
  for (const auto& [key, a] : terms_) {
    NumFrequency k;
    for (const auto& v : key.frequency) {
      const Rational c = v.evaluate(exact);
      if (!is_integer(c) || !c.get_num().fits_slong_p()) throw InconsistencyError("frequency not a 64-bit integer");
      k.push_back(c.get_num().get_si());
    }
    out.add_term(k, a.get_d() * evaluate_phase(key.phase, point, symbols).character());
  }
  return out;
}

std::string SymbolicTrig::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, a] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << ghk::to_string(a) << "*e(" << key.phase.to_string() << ")";
    if (dim_) {
      os << "*chi(";
      for (std::size_t i = 0; i < key.frequency.size(); ++i) os << (i ? ", " : "") << key.frequency[i].to_string();
      os << ")";
    }
  }
  return os.str();
}

SymbolicTrig apply_iterate(const AffineSystem& sys, const SymbolicTrig& f, const RationalPolynomial& n) {
  if (f.dimension() != sys.dimension()) throw InvalidArgument("function and system dimensions differ");
  if (!is_integer_valued(n)) throw InvalidArgument("iterate exponent " + n.to_string() + " is not integer valued");
  const std::size_t d = sys.dimension();
  const auto an = sys.matrix_power(n);
  const auto cn = sys.offset(n);
  SymbolicTrig out(d);
  for (const auto& [key, a] : f.terms()) {
    SymbolicTrig::FrequencyPoly k(d);
    PhasePolynomial phase = key.phase;
    for (std::size_t i = 0; i < d; ++i) {
      const auto& ki = key.frequency[i];
      if (ki.is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (!an[i][j].is_zero()) k[j] += ki * an[i][j];
      if (!cn[i].is_zero()) phase += ki * cn[i];
    }
    out.add_term(std::move(k), phase, a);
  }
  return out;
}

SymbolicTrig tensor(const SymbolicTrig& f, const SymbolicTrig& g) {
  SymbolicTrig out(f.dimension() + g.dimension());
  const SymbolicTrig gc = g.conj();
  if (f.size() * gc.size() > kTermCap) throw ResourceError("tensor product would exceed the term cap");
  for (const auto& [ka, ca] : f.terms())
    for (const auto& [kb, cb] : gc.terms()) {
      SymbolicTrig::FrequencyPoly k = ka.frequency;
      k.insert(k.end(), kb.frequency.begin(), kb.frequency.end());
      out.add_term(std::move(k), ka.phase + kb.phase, ca * cb);
    }
  return out;
}

std::vector<std::pair<Rational, PhasePolynomial>> generic_weyl(const PhasePolynomial& p,
                                                               const std::set<std::string>& inner) {
  if (!p.depends_on_any(inner)) return {{Rational(1), p}};
  PhasePolynomial rest;
  RationalPolynomial moving;  // monomials involving an averaged variable
  for (const auto& [m, c] : p.terms()) {
    auto [in, _] = monomial_split(m, inner);
    if (in.empty()) {
      rest.add_term(m, c);
      continue;
    }
    // Distinct monomials cannot cancel, so an irrational coefficient here
    // makes the phase irrational for all outer values off a zero-density set.
    if (!c.is_rational()) return {};
    moving.add_term(m, c.rational_part());
  }
  if (moving.is_zero()) return {{Rational(1), rest}};
  bool outer = false;
  for (const auto& v : moving.variables())
    if (!inner.count(v)) outer = true;
  if (outer) {
    if (is_integer_valued(moving)) return {{Rational(1), rest}};
    throw UnsupportedError("Weyl limit depends on residues of outer parameters: " + moving.to_string());
  }
  const auto vars = moving.variables();
  const ExactComplex w = weyl_limit(to_phase(moving), std::vector<std::string>(vars.begin(), vars.end()));
  std::vector<std::pair<Rational, PhasePolynomial>> out;
  for (const auto& [phase, amp] : w.terms()) out.emplace_back(amp, rest + PhasePolynomial(phase));
  return out;
}

SymbolicTrig average_limit(const SymbolicTrig& f, const std::set<std::string>& inner, AverageCensus* census) {
  SymbolicTrig out(f.dimension());
  AverageCensus local;
  local.input_terms = f.size();
  for (const auto& [key, a] : f.terms()) {
    bool moving = false;
    for (const auto& k : key.frequency) moving = moving || k.depends_on_any(inner);
    if (moving) {
      ++local.dropped_frequency;
      continue;
    }
    const auto limit = generic_weyl(key.phase, inner);
    if (limit.empty()) {
      ++local.vanished_weyl;
      continue;
    }
    ++local.kept;
    for (const auto& [amp, phase] : limit) out.add_term(key.frequency, phase, a * amp);
  }
  if (census) *census = local;
  return out;
}

SymbolicTrig integral(const SymbolicTrig& f) {
  SymbolicTrig out(0);
  for (const auto& [key, a] : f.terms()) {
    bool zero = true;
    for (const auto& k : key.frequency) zero = zero && k.is_zero();
    if (zero) out.add_term({}, key.phase, a);
  }
  return out;
}

}  // namespace ghk

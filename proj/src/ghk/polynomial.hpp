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

// Sparse multivariate polynomials in named integer variables.
//
// Variables always range over the integers. A monomial is a sorted list of
// (name, exponent) pairs with positive exponents; the empty monomial is 1.
// Terms are kept in a std::map, which fixes the canonical monomial order.

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ghk/errors.hpp"
#include "ghk/scalars.hpp"

namespace ghk {

using Monomial = std::vector<std::pair<std::string, unsigned>>;

Monomial monomial_product(const Monomial& a, const Monomial& b);
std::string monomial_to_string(const Monomial& m);
unsigned monomial_degree(const Monomial& m);
/// Splits m into the factor over `vars` and the factor over the rest.
std::pair<Monomial, Monomial> monomial_split(const Monomial& m, const std::set<std::string>& vars);
Integer monomial_value(const Monomial& m, const std::map<std::string, Integer>& point);

template <class C>
class Polynomial {
 public:
  using Coefficient = C;
  using Terms = std::map<Monomial, C>;

  Polynomial() = default;
  Polynomial(const C& c) { add_term({}, c); }  // NOLINT: constants embed

  static Polynomial variable(const std::string& name) {
    Polynomial p;
    p.add_term({{name, 1u}}, C(1));
    return p;
  }

  static Polynomial monomial(Monomial m, const C& c) {
    Polynomial p;
    p.add_term(std::move(m), c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  C constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? C(0) : it->second;
  }

  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, _] : terms_) d = std::max(d, monomial_degree(m));
    return d;
  }

  std::set<std::string> variables() const {
    std::set<std::string> out;
    for (const auto& [m, _] : terms_)
      for (const auto& [v, _e] : m) out.insert(v);
    return out;
  }

  bool depends_on_any(const std::set<std::string>& vars) const {
    for (const auto& [m, _] : terms_)
      for (const auto& [v, _e] : m)
        if (vars.count(v)) return true;
    return false;
  }

  void add_term(Monomial m, const C& c) {
    if (ghk::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (ghk::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  /// Scales every coefficient by a rational.
  Polynomial scaled(const Rational& r) const {
    Polynomial out;
    if (sgn(r) == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, coeff_mul(c, r));
    return out;
  }

  /// Coefficient-wise transform; zero results are dropped.
  template <class F>
  auto map_coefficients(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    Polynomial<D> out;
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  /// Value at an integer point; every variable must be assigned.
  C evaluate(const std::map<std::string, Integer>& point) const {
    C acc(0);
    for (const auto& [m, c] : terms_) acc += coeff_mul(c, Rational(monomial_value(m, point)));
    return acc;
  }

  /// Groups terms by their monomial in `inner`; each group's coefficient is a
  /// polynomial in the remaining variables.
  std::map<Monomial, Polynomial> split(const std::set<std::string>& inner) const {
    std::map<Monomial, Polynomial> out;
    for (const auto& [m, c] : terms_) {
      auto [in, rest] = monomial_split(m, inner);
      out[in].add_term(rest, c);
    }
    for (auto it = out.begin(); it != out.end();) {
      if (it->second.is_zero())
        it = out.erase(it);
      else
        ++it;
    }
    return out;
  }

  Polynomial renamed(const std::map<std::string, std::string>& names) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      Monomial r;
      for (const auto& [v, e] : m) {
        auto it = names.find(v);
        r.emplace_back(it == names.end() ? v : it->second, e);
      }
      out.add_term(monomial_product(r, {}), c);
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      std::string cs = coeff_to_string(c);
      if (m.empty())
        os << cs;
      else
        os << "(" << cs << ")*" << monomial_to_string(m);
    }
    return os.str();
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
  friend bool operator<(const Polynomial& a, const Polynomial& b) { return a.terms_ < b.terms_; }

 private:
  template <class>
  friend class Polynomial;
  Terms terms_;
};

template <class A, class B>
auto operator*(const Polynomial<A>& a, const Polynomial<B>& b) {
  using R = std::decay_t<decltype(coeff_mul(std::declval<const A&>(), std::declval<const B&>()))>;
  Polynomial<R> out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add_term(monomial_product(ma, mb), coeff_mul(ca, cb));
  return out;
}

using PhasePolynomial = Polynomial<FormalScalar>;
using RationalPolynomial = Polynomial<Rational>;

inline PhasePolynomial to_phase(const RationalPolynomial& p) {
  return p.map_coefficients([](const Rational& r) { return FormalScalar(r); });
}

/// C(p, j) = p (p-1) ... (p-j+1) / j! as a polynomial.
RationalPolynomial binomial(const RationalPolynomial& p, unsigned j);

/// True iff p maps every integer point to an integer. Checked on the grid
/// {0..deg}^vars, which determines integer-valuedness.
bool is_integer_valued(const RationalPolynomial& p);

/// Reduces each coefficient's rational part mod 1. Valid for arguments of
/// e(.) since all variables are integers; every monomial, and any integer-
/// valued polynomial substituted into it, takes integer values.
PhasePolynomial reduce_phase(const PhasePolynomial& p);

}  // namespace ghk

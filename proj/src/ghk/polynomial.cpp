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
#include "ghk/polynomial.hpp"

#include <algorithm>

namespace ghk {

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  Monomial merged;
  for (const auto& [v, e] : out) {
    if (e == 0) continue;
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += e;
    else
      merged.emplace_back(v, e);
  }
  return merged;
}

std::string monomial_to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += "*";
    s += m[i].first;
    if (m[i].second != 1) s += "^" + std::to_string(m[i].second);
  }
  return s;
}

unsigned monomial_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [_, e] : m) d += e;
  return d;
}

std::pair<Monomial, Monomial> monomial_split(const Monomial& m, const std::set<std::string>& vars) {
  Monomial in, out;
  for (const auto& ve : m) (vars.count(ve.first) ? in : out).push_back(ve);
  return {in, out};
}

Integer monomial_value(const Monomial& m, const std::map<std::string, Integer>& point) {
  Integer acc = 1;
  for (const auto& [v, e] : m) {
    auto it = point.find(v);
    if (it == point.end()) throw InvalidArgument("polynomial variable '" + v + "' has no value");
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), it->second.get_mpz_t(), e);
    acc *= p;
  }
  return acc;
}

RationalPolynomial binomial(const RationalPolynomial& p, unsigned j) {
  RationalPolynomial out(Rational(1));
  for (unsigned i = 0; i < j; ++i) {
    out = out * (p - RationalPolynomial(Rational(i)));
    out = out.scaled(make_rational(1, i + 1));
  }
  return out;
}

bool is_integer_valued(const RationalPolynomial& p) {
  bool all_integer = true;
  for (const auto& [_, c] : p.terms()) all_integer = all_integer && is_integer(c);
  if (all_integer) return true;
  const auto var_set = p.variables();
  std::vector<std::string> vars(var_set.begin(), var_set.end());
  const unsigned deg = p.degree();
  std::vector<unsigned> idx(vars.size(), 0);
  std::map<std::string, Integer> point;
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) point[vars[i]] = idx[i];
    if (!is_integer(p.evaluate(point))) return false;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] > deg) idx[k++] = 0;
    if (k == idx.size()) return true;
  }
}

PhasePolynomial reduce_phase(const PhasePolynomial& p) {
  return p.map_coefficients([](const FormalScalar& c) { return c.mod_one(); });
}

}  // namespace ghk

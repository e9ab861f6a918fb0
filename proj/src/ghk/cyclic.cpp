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
#include "ghk/cyclic.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ghk/errors.hpp"
#include "ghk/numeric.hpp"

namespace ghk {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

constexpr std::int64_t kMaxPoints = std::int64_t{1} << 26;

}  // namespace

CyclicSystem::CyclicSystem(std::int64_t modulus, std::int64_t step) : factors_{{modulus, step}} { init(); }

CyclicSystem::CyclicSystem(std::vector<Factor> factors) : factors_(std::move(factors)) { init(); }

void CyclicSystem::init() {
  if (factors_.empty()) throw InvalidArgument("cyclic system needs at least one factor");
  size_ = 1;
  period_ = 1;
  for (auto& f : factors_) {
    if (f.modulus < 1) throw InvalidArgument("cyclic modulus must be >= 1, got " + std::to_string(f.modulus));
    f.step = mod(f.step, f.modulus);
    if (size_ > kMaxPoints / f.modulus) throw ResourceError("cyclic system too large");
    size_ *= f.modulus;
    const std::int64_t order = f.modulus / std::gcd(f.step, f.modulus);
    period_ = std::lcm(period_, order);
  }
}

std::vector<std::int64_t> CyclicSystem::shift_table(std::int64_t n) const {
  std::vector<std::int64_t> perm(static_cast<std::size_t>(size_));
  if (factors_.size() == 1) {
    const std::int64_t N = factors_[0].modulus;
    const std::int64_t shift = static_cast<std::int64_t>((static_cast<__int128>(mod(n, N)) * factors_[0].step) % N);
    for (std::int64_t x = 0; x < N; ++x) {
      std::int64_t y = x + shift;
      perm[static_cast<std::size_t>(x)] = y >= N ? y - N : y;
    }
    return perm;
  }
  std::vector<std::int64_t> shifts;
  for (const auto& f : factors_)
    shifts.push_back(static_cast<std::int64_t>((static_cast<__int128>(mod(n, f.modulus)) * f.step) % f.modulus));
  std::vector<std::int64_t> coord(factors_.size(), 0);
  for (std::int64_t x = 0; x < size_; ++x) {
    std::int64_t y = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const std::int64_t N = factors_[i].modulus;
      std::int64_t c = coord[i] + shifts[i];
      y = y * N + (c >= N ? c - N : c);
    }
    perm[static_cast<std::size_t>(x)] = y;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      if (++coord[i] < factors_[i].modulus) break;
      coord[i] = 0;
    }
  }
  return perm;
}

CyclicSystem CyclicSystem::power(std::int64_t d) const {
  std::vector<Factor> out = factors_;
  for (auto& f : out) f.step = static_cast<std::int64_t>((static_cast<__int128>(f.step) * mod(d, f.modulus)) % f.modulus);
  return CyclicSystem(std::move(out));
}

CyclicSystem CyclicSystem::product(const CyclicSystem& other) const {
  std::vector<Factor> out = factors_;
  out.insert(out.end(), other.factors_.begin(), other.factors_.end());
  return CyclicSystem(std::move(out));
}

void check_function(const CyclicSystem& sys, const CyclicFunction& f) {
  if (static_cast<std::int64_t>(f.size()) != sys.size())
    throw InvalidArgument("function has " + std::to_string(f.size()) + " values, system has " +
                          std::to_string(sys.size()) + " points");
}

CyclicFunction apply_iterate(const CyclicSystem& sys, const CyclicFunction& f, std::int64_t n) {
  check_function(sys, f);
  const auto perm = sys.shift_table(n);
  CyclicFunction out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[static_cast<std::size_t>(perm[x])];
  return out;
}

Complex integral(const CyclicSystem& sys, const CyclicFunction& f) {
  check_function(sys, f);
  Complex s = 0.0;
  for (const auto& v : f) s += v;
  return s / static_cast<double>(f.size());
}

CyclicFunction multiply(const CyclicFunction& f, const CyclicFunction& g) {
  if (f.size() != g.size()) throw InvalidArgument("pointwise product of functions of different length");
  CyclicFunction out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] * g[i];
  return out;
}

CyclicFunction conj(const CyclicFunction& f) {
  CyclicFunction out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::conj(f[i]);
  return out;
}

CyclicFunction scale(const CyclicFunction& f, Complex c) {
  CyclicFunction out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = c * f[i];
  return out;
}

CyclicFunction tensor(const CyclicFunction& f, const CyclicFunction& g) {
  CyclicFunction out;
  out.reserve(f.size() * g.size());
  for (const auto& a : f)
    for (const auto& b : g) out.push_back(a * std::conj(b));
  return out;
}

double sup_norm(const CyclicFunction& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(const CyclicFunction& f) {
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v);
  return f.empty() ? 0.0 : std::sqrt(s / static_cast<double>(f.size()));
}

double l2_distance(const CyclicFunction& f, const CyclicFunction& g) {
  if (f.size() != g.size()) throw InvalidArgument("L2 distance of functions of different length");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::norm(f[i] - g[i]);
  return f.empty() ? 0.0 : std::sqrt(s / static_cast<double>(f.size()));
}

CyclicFunction indicator(const CyclicSystem& sys, const std::vector<std::int64_t>& points) {
  CyclicFunction out(static_cast<std::size_t>(sys.size()), 0.0);
  for (auto p : points) out[static_cast<std::size_t>(mod(p, sys.size()))] = 1.0;
  return out;
}

CyclicFunction character(const CyclicSystem& sys, std::int64_t k) {
  if (sys.factors().size() != 1) throw InvalidArgument("character() needs a single-factor system");
  const std::int64_t N = sys.size();
  CyclicFunction out(static_cast<std::size_t>(N));
  for (std::int64_t x = 0; x < N; ++x)
    out[static_cast<std::size_t>(x)] = Turn::from_rational(make_rational(mod(k * x, N), N)).character();
  return out;
}

}  // namespace ghk

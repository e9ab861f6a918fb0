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
#include "ghk/affine.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ghk/errors.hpp"

namespace ghk {

namespace {

IntMatrix identity(std::size_t d) {
  IntMatrix m(d, std::vector<Integer>(d, 0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t d = a.size();
  IntMatrix out(d, std::vector<Integer>(d, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

bool is_zero_matrix(const IntMatrix& m) {
  for (const auto& row : m)
    for (const auto& v : row)
      if (sgn(v) != 0) return false;
  return true;
}

Integer binomial_int(const Integer& n, unsigned j) {
  Integer num = 1;
  for (unsigned i = 0; i < j; ++i) num *= n - i;
  Integer fact = 1;
  for (unsigned i = 2; i <= j; ++i) fact *= i;
  return num / fact;
}

// C(n, j) for small |n| and j in 128-bit arithmetic; the product of j
// consecutive integers is exactly divisible by j!.
bool binomial_small(long long n, unsigned j, __int128& out) {
  if (j > 6 || n > (1LL << 20) || n < -(1LL << 20)) return false;
  __int128 num = 1;
  for (unsigned i = 0; i < j; ++i) num *= static_cast<__int128>(n) - i;
  __int128 fact = 1;
  for (unsigned i = 2; i <= j; ++i) fact *= i;
  out = num / fact;
  return true;
}

long long to_ll(const Integer& z, const char* what) {
  if (!z.fits_slong_p()) throw ResourceError(std::string(what) + " exceeds 64-bit range");
  return z.get_si();
}

long long checked(__int128 v, const char* what) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw ResourceError(std::string(what) + " exceeds 64-bit range");
  return static_cast<long long>(v);
}

}  // namespace

AffineSystem::AffineSystem(IntMatrix a, std::vector<FormalScalar> b) : a_(std::move(a)), b_(std::move(b)) {
  const std::size_t d = b_.size();
  if (d == 0) throw InvalidArgument("affine system needs dimension >= 1");
  if (a_.size() != d) throw InvalidArgument("matrix and translation dimensions differ");
  for (const auto& row : a_)
    if (row.size() != d) throw InvalidArgument("matrix is not square");
  IntMatrix nil = a_;
  for (std::size_t i = 0; i < d; ++i) nil[i][i] -= 1;
  IntMatrix p = identity(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (is_zero_matrix(p)) break;
    nil_powers_.push_back(p);
    p = mat_mul(p, nil);
  }
  if (!is_zero_matrix(p)) throw InvalidArgument("matrix is not unipotent: (A - I)^d != 0");
  for (const auto& m : nil_powers_) {
    std::vector<FormalScalar> v(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        if (sgn(m[i][k]) != 0) v[i] += b_[k] * Rational(m[i][k]);
    nil_b_.push_back(std::move(v));
  }
}

AffineSystem AffineSystem::product(const AffineSystem& other) const {
  const std::size_t d1 = dimension(), d2 = other.dimension();
  IntMatrix a(d1 + d2, std::vector<Integer>(d1 + d2, 0));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j) a[i][j] = a_[i][j];
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d2; ++j) a[d1 + i][d1 + j] = other.a_[i][j];
  std::vector<FormalScalar> b = b_;
  b.insert(b.end(), other.b_.begin(), other.b_.end());
  return AffineSystem(std::move(a), std::move(b));
}

IntMatrix AffineSystem::matrix_power(const Integer& n) const {
  const std::size_t d = dimension();
  IntMatrix out(d, std::vector<Integer>(d, 0));
  for (std::size_t j = 0; j < nil_powers_.size(); ++j) {
    const Integer c = binomial_int(n, static_cast<unsigned>(j));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) out[i][k] += c * nil_powers_[j][i][k];
  }
  return out;
}

std::vector<FormalScalar> AffineSystem::offset(const Integer& n) const {
  std::vector<FormalScalar> out(dimension());
  for (std::size_t j = 0; j < nil_b_.size(); ++j) {
    const Rational c(binomial_int(n, static_cast<unsigned>(j + 1)));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += nil_b_[j][i] * c;
  }
  return out;
}

std::vector<std::vector<RationalPolynomial>> AffineSystem::matrix_power(const RationalPolynomial& n) const {
  const std::size_t d = dimension();
  std::vector<std::vector<RationalPolynomial>> out(d, std::vector<RationalPolynomial>(d));
  for (std::size_t j = 0; j < nil_powers_.size(); ++j) {
    const RationalPolynomial c = binomial(n, static_cast<unsigned>(j));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        if (sgn(nil_powers_[j][i][k]) != 0) out[i][k] += c.scaled(Rational(nil_powers_[j][i][k]));
  }
  return out;
}

std::vector<PhasePolynomial> AffineSystem::offset(const RationalPolynomial& n) const {
  std::vector<PhasePolynomial> out(dimension());
  for (std::size_t j = 0; j < nil_b_.size(); ++j) {
    const RationalPolynomial c = binomial(n, static_cast<unsigned>(j + 1));
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!nil_b_[j][i].is_zero()) out[i] += c * PhasePolynomial(nil_b_[j][i]);
  }
  return out;
}

AffineSystem quadratic_skew(const FormalScalar& a) {
  return AffineSystem({{Integer(1), Integer(0)}, {Integer(2), Integer(1)}}, {a, a});
}

// ---------------------------------------------------------------------------

TrigPolynomial TrigPolynomial::constant(std::size_t dimension, const ExactComplex& c) {
  TrigPolynomial t(dimension);
  t.add_term(Frequency(dimension, 0), c);
  return t;
}

TrigPolynomial TrigPolynomial::character(const Frequency& k, const ExactComplex& amplitude) {
  TrigPolynomial t(k.size());
  t.add_term(k, amplitude);
  return t;
}

void TrigPolynomial::add_term(const Frequency& k, const ExactComplex& c) {
  if (k.size() != dim_) throw InvalidArgument("frequency dimension mismatch");
  if (c.is_structural_zero()) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_structural_zero()) terms_.erase(it);
  }
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& o) {
  if (o.dim_ != dim_) throw InvalidArgument("sum of trigonometric polynomials of different dimension");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  if (terms_.size() > kTermCap) throw ResourceError("trigonometric polynomial exceeds term cap");
  return *this;
}

TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b) {
  if (a.dim_ != b.dim_) throw InvalidArgument("product of trigonometric polynomials of different dimension");
  if (a.terms_.size() * b.terms_.size() > kTermCap)
    throw ResourceError("trigonometric product would exceed the term cap of " + std::to_string(kTermCap));
  TrigPolynomial out(a.dim_);
  Frequency k(a.dim_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
      out.add_term(k, ca * cb);
    }
  return out;
}

TrigPolynomial TrigPolynomial::conj() const {
  TrigPolynomial out(dim_);
  for (const auto& [k, c] : terms_) {
    Frequency neg(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
    out.add_term(neg, c.conj());
  }
  return out;
}

TrigPolynomial TrigPolynomial::scaled(const ExactComplex& c) const {
  TrigPolynomial out(dim_);
  for (const auto& [k, a] : terms_) out.add_term(k, a * c);
  return out;
}

std::string TrigPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*chi(";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i].get_str();
    os << ")";
  }
  return os.str();
}

TrigPolynomial apply_iterate(const AffineSystem& sys, const TrigPolynomial& f, const Integer& n) {
  if (f.dimension() != sys.dimension()) throw InvalidArgument("function and system dimensions differ");
  const std::size_t d = sys.dimension();
  const IntMatrix an = sys.matrix_power(n);
  const std::vector<FormalScalar> cn = sys.offset(n);
  TrigPolynomial out(d);
  for (const auto& [k, c] : f.terms()) {
    Frequency nk(d, 0);
    FormalScalar phase;
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(k[i]) == 0) continue;
      for (std::size_t j = 0; j < d; ++j) nk[j] += k[i] * an[i][j];
      phase += cn[i] * Rational(k[i]);
    }
    out.add_term(nk, c.rotated(phase));
  }
  return out;
}

ExactComplex integral(const TrigPolynomial& f) {
  auto it = f.terms().find(Frequency(f.dimension(), 0));
  return it == f.terms().end() ? ExactComplex() : it->second;
}

TrigPolynomial tensor(const TrigPolynomial& f, const TrigPolynomial& g) {
  TrigPolynomial out(f.dimension() + g.dimension());
  const TrigPolynomial gc = g.conj();
  for (const auto& [ka, ca] : f.terms())
    for (const auto& [kb, cb] : gc.terms()) {
      Frequency k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      out.add_term(k, ca * cb);
    }
  return out;
}

// ---------------------------------------------------------------------------

NumTrig NumTrig::constant(std::size_t dimension, Complex c) {
  NumTrig t(dimension);
  t.add_term(NumFrequency(dimension, 0), c);
  return t;
}

NumTrig NumTrig::from_exact(const TrigPolynomial& f, const SymbolTable& symbols) {
  NumTrig t(f.dimension());
  for (const auto& [k, c] : f.terms()) {
    NumFrequency nk;
    for (const auto& v : k) nk.push_back(to_ll(v, "frequency"));
    t.add_term(nk, c.numeric(symbols));
  }
  return t;
}

void NumTrig::add_term(const NumFrequency& k, Complex c) {
  if (k.size() != dim_) throw InvalidArgument("frequency dimension mismatch");
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) it->second += c;
}

NumTrig& NumTrig::operator+=(const NumTrig& o) {
  if (o.dim_ != dim_) throw InvalidArgument("sum of trigonometric polynomials of different dimension");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  if (terms_.size() > kTermCap) throw ResourceError("trigonometric polynomial exceeds term cap");
  return *this;
}

NumTrig operator*(const NumTrig& a, const NumTrig& b) {
  if (a.dim_ != b.dim_) throw InvalidArgument("product of trigonometric polynomials of different dimension");
  if (a.terms_.size() * b.terms_.size() > kTermCap)
    throw ResourceError("trigonometric product would exceed the term cap of " + std::to_string(kTermCap));
  NumTrig out(a.dim_);
  NumFrequency k(a.dim_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      for (std::size_t i = 0; i < k.size(); ++i)
        k[i] = checked(static_cast<__int128>(ka[i]) + kb[i], "frequency");
      out.add_term(k, ca * cb);
    }
  return out;
}

NumTrig NumTrig::conj() const {
  NumTrig out(dim_);
  for (const auto& [k, c] : terms_) {
    NumFrequency neg(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
    out.add_term(neg, std::conj(c));
  }
  return out;
}

NumTrig NumTrig::scaled(Complex c) const {
  NumTrig out(dim_);
  for (const auto& [k, a] : terms_) out.add_term(k, a * c);
  return out;
}

Complex NumTrig::integral() const {
  auto it = terms_.find(NumFrequency(dim_, 0));
  return it == terms_.end() ? Complex(0.0) : it->second;
}

double NumTrig::l2_norm() const {
  double s = 0.0;
  for (const auto& [_, c] : terms_) s += std::norm(c);
  return std::sqrt(s);
}

double l2_distance(const NumTrig& a, const NumTrig& b) {
  return (a + b.scaled(-1.0)).l2_norm();
}

NumTrig tensor(const NumTrig& f, const NumTrig& g) {
  NumTrig out(f.dimension() + g.dimension());
  const NumTrig gc = g.conj();
  for (const auto& [ka, ca] : f.terms())
    for (const auto& [kb, cb] : gc.terms()) {
      NumFrequency k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      out.add_term(k, ca * cb);
    }
  return out;
}

NumericAffine::NumericAffine(const AffineSystem& sys, const SymbolTable& symbols) : dim_(sys.dimension()) {
  for (const auto& m : sys.nilpotent_powers()) {
    std::vector<std::vector<long long>> mm(dim_, std::vector<long long>(dim_));
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) mm[i][j] = to_ll(m[i][j], "matrix entry");
    nil_powers_.push_back(std::move(mm));
  }
  for (const auto& v : sys.nilpotent_translations()) {
    std::vector<Turn> t;
    for (const auto& x : v) t.push_back(symbols.turn(x));
    nil_b_.push_back(std::move(t));
  }
}

NumericAffine::Step NumericAffine::step(long long n) const {
  Step s;
  s.matrix.assign(dim_, std::vector<long long>(dim_, 0));
  s.offset.assign(dim_, Turn{});
  std::vector<std::vector<__int128>> acc(dim_, std::vector<__int128>(dim_, 0));
  const std::size_t terms = nil_powers_.size();
  for (std::size_t j = 0; j <= terms; ++j) {
    __int128 c = 0;
    u128 cw = 0;
    if (binomial_small(n, static_cast<unsigned>(j), c)) {
      cw = static_cast<u128>(c);
    } else {
      Integer big = binomial_int(Integer(std::to_string(n)), static_cast<unsigned>(j));
      cw = wrap_u128(big);
      if (j < terms) c = static_cast<__int128>(to_ll(big, "binomial coefficient"));
    }
    if (j < terms) {
      for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = 0; b < dim_; ++b) {
          const long long e = nil_powers_[j][a][b];
          if (e) acc[a][b] += c * e;
        }
    }
    if (j >= 1)
      for (std::size_t a = 0; a < dim_; ++a) s.offset[a] += cw * nil_b_[j - 1][a];
  }
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = 0; b < dim_; ++b) s.matrix[a][b] = checked(acc[a][b], "matrix power entry");
  return s;
}

NumTrig NumericAffine::apply(const Step& st, const NumTrig& f) const {
  if (f.dimension() != dim_) throw InvalidArgument("function and system dimensions differ");
  NumTrig out(dim_);
  NumFrequency nk(dim_);
  for (const auto& [k, c] : f.terms()) {
    std::vector<__int128> acc(dim_, 0);
    Turn phase;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!k[i]) continue;
      for (std::size_t j = 0; j < dim_; ++j) acc[j] += static_cast<__int128>(k[i]) * st.matrix[i][j];
      phase += wrap_u128(k[i]) * st.offset[i];
    }
    for (std::size_t j = 0; j < dim_; ++j) nk[j] = checked(acc[j], "frequency");
    out.add_term(nk, c * phase.character());
  }
  return out;
}

}  // namespace ghk

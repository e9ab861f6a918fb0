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
#include "ghk/sequences.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

#include "ghk/errors.hpp"
#include "ghk/parallel.hpp"
#include "ghk/weyl.hpp"

namespace ghk {

namespace {

[[noreturn]] void overflow(const char* what) {
  throw ResourceError(std::string("sequence value overflows 64 bits in ") + what);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) overflow(what);
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) overflow(what);
  return r;
}

std::int64_t horner(const std::vector<std::int64_t>& c, std::int64_t n) {
  std::int64_t acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = checked_add(checked_mul(acc, n, "polynomial"), *it, "polynomial");
  return acc;
}

/// p(n) modulo 2^128; enough for {p(n) alpha}.
u128 horner_wrapped(const std::vector<std::int64_t>& c, std::int64_t n) {
  u128 acc = 0;
  const u128 x = wrap_u128(static_cast<long long>(n));
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + wrap_u128(static_cast<long long>(*it));
  return acc;
}

u128 power_wrapped(std::int64_t a, unsigned e) {
  u128 out = 1;
  const u128 x = wrap_u128(static_cast<long long>(a));
  for (unsigned k = 0; k < e; ++k) out *= x;
  return out;
}

void check_index(std::int64_t n) {
  if (n < 1) throw InvalidArgument("sequence index must be >= 1, got " + std::to_string(n));
}

void check_window(const Rational& u, const Rational& v) {
  if (sgn(u) < 0 || u > 1 || sgn(v) < 0 || v > 1 || u > v)
    throw InvalidArgument("window [" + to_string(u) + ", " + to_string(v) + "] must satisfy 0 <= u <= v <= 1");
}

}  // namespace

struct IntegerSequence::Enumerator {
  std::mutex mutex;
  std::vector<std::int64_t> found;
  std::int64_t next = 1;
  std::int64_t scan_bound = kEnumerationScanBound;
};

const char* to_string(IntegerSequence::Kind k) {
  switch (k) {
    case IntegerSequence::Kind::Polynomial: return "polynomial";
    case IntegerSequence::Kind::FloorPower: return "floor-power";
    case IntegerSequence::Kind::Indicator: return "indicator";
    case IntegerSequence::Kind::Enumeration: return "enumeration";
    case IntegerSequence::Kind::Table: return "table";
  }
  return "?";
}

IntegerSequence IntegerSequence::polynomial(std::vector<std::int64_t> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  IntegerSequence s;
  s.kind_ = Kind::Polynomial;
  s.coeffs_ = std::move(coeffs);
  return s;
}

IntegerSequence IntegerSequence::floor_power(const NumericReal& c) {
  if (sgn(c.fixed()) <= 0) throw InvalidArgument("floor-power exponent must be positive");
  IntegerSequence s;
  s.kind_ = Kind::FloorPower;
  s.real_ = c;
  try {
    Rational r = parse_rational(c.literal());
    if (sgn(r) > 0 && r.get_den() <= 64 && r.get_num() <= 64) s.exact_exponent_ = r;
  } catch (const ConfigError&) {
  }
  return s;
}

IntegerSequence IntegerSequence::indicator(const IntegerSequence& base, std::vector<std::int64_t> phase_coeffs,
                                           const NumericReal& alpha, const Rational& u, const Rational& v) {
  check_window(u, v);
  IntegerSequence s;
  s.kind_ = Kind::Indicator;
  s.base_ = std::make_shared<const IntegerSequence>(base);
  s.coeffs_ = std::move(phase_coeffs);
  s.real_ = alpha;
  s.u_ = u;
  s.v_ = v;
  return s;
}

IntegerSequence IntegerSequence::enumeration(unsigned ell, const NumericReal& alpha, const Rational& u,
                                             const Rational& v, std::int64_t scan_bound) {
  check_window(u, v);
  if (ell < 1 || ell > 4) throw InvalidArgument("enumeration exponent must be in [1, 4]");
  if (scan_bound < 1) throw InvalidArgument("scan bound must be positive");
  IntegerSequence s;
  s.kind_ = Kind::Enumeration;
  s.ell_ = ell;
  s.real_ = alpha;
  s.u_ = u;
  s.v_ = v;
  s.enumerator_ = std::make_shared<Enumerator>();
  s.enumerator_->scan_bound = scan_bound;
  return s;
}

IntegerSequence IntegerSequence::table(std::vector<std::int64_t> values) {
  IntegerSequence s;
  s.kind_ = Kind::Table;
  s.table_ = std::make_shared<const std::vector<std::int64_t>>(std::move(values));
  return s;
}

IntegerSequence IntegerSequence::table_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open table file '" + path + "'");
  std::vector<std::int64_t> values;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream is(line);
    std::string token;
    if (!(is >> token)) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    std::string extra;
    if (used != token.size() || (is >> extra))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected one integer per line");
    values.push_back(v);
  }
  return table(std::move(values));
}

bool IntegerSequence::in_window(const Turn& t, bool closed) const {
  if (compare_turn(t, u_) < 0) return false;
  const int c = compare_turn(t, v_);
  return closed ? c <= 0 : c < 0;
}

std::int64_t IntegerSequence::floor_power_at(std::int64_t n) const {
  if (exact_exponent_) {
    Integer x(static_cast<long>(n)), out;
    mpz_pow_ui(x.get_mpz_t(), x.get_mpz_t(), exact_exponent_->get_num().get_ui());
    mpz_root(out.get_mpz_t(), x.get_mpz_t(), exact_exponent_->get_den().get_ui());
    if (!out.fits_slong_p()) overflow("floor-power");
    return out.get_si();
  }
  const long double v = std::pow(static_cast<long double>(n), static_cast<long double>(real_.value()));
  if (!(v < 9.2e18L)) overflow("floor-power");
  const long double fl = std::floor(v);
  const long double gap = std::min(v - fl, fl + 1 - v);
  if (gap > 1e-9L + v * 1e-15L) return static_cast<std::int64_t>(fl);
  // Close to an integer: redo in 320-bit arithmetic from the exact exponent.
  mpfr_t c, x;
  mpfr_inits2(320, c, x, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_z(c, real_.fixed().get_mpz_t(), MPFR_RNDN);
  mpfr_div_2ui(c, c, NumericReal::fixed_bits(), MPFR_RNDN);
  mpfr_set_si(x, static_cast<long>(n), MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  mpfr_mul(x, x, c, MPFR_RNDN);
  mpfr_exp(x, x, MPFR_RNDN);
  mpfr_floor(x, x);
  const long out = mpfr_get_si(x, MPFR_RNDN);
  mpfr_clears(c, x, static_cast<mpfr_ptr>(nullptr));
  return out;
}

std::int64_t IntegerSequence::operator()(std::int64_t n) const {
  check_index(n);
  switch (kind_) {
    case Kind::Polynomial:
      return horner(coeffs_, n);
    case Kind::FloorPower:
      return floor_power_at(n);
    case Kind::Indicator: {
      const Turn t = horner_wrapped(coeffs_, n) * real_.turn();
      return in_window(t, false) ? (*base_)(n) : 0;
    }
    case Kind::Enumeration: {
      auto& e = *enumerator_;
      std::lock_guard lock(e.mutex);
      const Turn a = real_.turn();
      while (static_cast<std::int64_t>(e.found.size()) < n) {
        if (e.next > e.scan_bound)
          throw ResourceError("enumeration scan bound " + std::to_string(e.scan_bound) + " exhausted after " +
                              std::to_string(e.found.size()) + " elements (" + std::to_string(n) + " requested)");
        if (in_window(power_wrapped(e.next, ell_) * a, true)) e.found.push_back(e.next);
        ++e.next;
      }
      return e.found[static_cast<std::size_t>(n - 1)];
    }
    case Kind::Table:
      if (n > static_cast<std::int64_t>(table_->size()))
        throw InvalidArgument("table has " + std::to_string(table_->size()) + " entries, index " + std::to_string(n) +
                              " requested");
      return (*table_)[static_cast<std::size_t>(n - 1)];
  }
  return 0;
}

std::vector<std::int64_t> IntegerSequence::range(std::int64_t N) const {
  if (N < 0) throw InvalidArgument("range length must be non-negative");
  std::vector<std::int64_t> out(static_cast<std::size_t>(N));
  if (N == 0) return out;
  if (kind_ == Kind::Enumeration) {
    (*this)(N);  // fills the cache in order
    for (std::int64_t n = 1; n <= N; ++n) out[static_cast<std::size_t>(n - 1)] = (*this)(n);
    return out;
  }
  parallel::for_each(N, [&](std::int64_t i) { out[static_cast<std::size_t>(i)] = (*this)(i + 1); });
  return out;
}

std::string IntegerSequence::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  switch (kind_) {
    case Kind::Polynomial:
    case Kind::Indicator: {
      os << " [";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
      os << "]";
      if (kind_ == Kind::Indicator)
        os << " alpha=" << real_.literal() << " window=[" << to_string(u_) << "," << to_string(v_) << ") base="
           << base_->describe();
      break;
    }
    case Kind::FloorPower:
      os << " c=" << real_.literal();
      break;
    case Kind::Enumeration:
      os << " ell=" << ell_ << " alpha=" << real_.literal() << " window=[" << to_string(u_) << "," << to_string(v_)
         << "]";
      break;
    case Kind::Table:
      os << " length=" << table_->size();
      break;
  }
  return os.str();
}

std::int64_t eval_sequence(const IntegerSequence& seq, std::int64_t n) { return seq(n); }
std::vector<std::int64_t> eval_range(const IntegerSequence& seq, std::int64_t N) { return seq.range(N); }

Turn fractional_turn(std::int64_t a, const NumericReal& t) { return wrap_u128(static_cast<long long>(a)) * t.turn(); }

int compare_turn(const Turn& t, const Rational& r) {
  if (sgn(r) < 0) return 1;
  if (r >= 1) return -1;
  const Turn R = Turn::from_rational(r);
  if (t.bits < R.bits) return -1;
  if (t.bits > R.bits) return 1;
  // t = floor(r 2^128) / 2^128 <= r, with equality iff r 2^128 is an integer.
  Rational scaled = r;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), 128);
  return is_integer(scaled) ? 0 : -1;
}

Complex weyl_sum(const IntegerSequence& seq, const NumericReal& t, std::int64_t N) {
  if (N < 1) throw InvalidArgument("weyl_sum needs N >= 1");
  const auto values = seq.range(N);
  const Complex total = parallel::reduce<Complex>(
      N,
      [&](std::int64_t b, std::int64_t e) {
        Complex acc = 0.0;
        for (std::int64_t i = b; i < e; ++i) acc += fractional_turn(values[static_cast<std::size_t>(i)], t).character();
        return acc;
      },
      [](Complex a, Complex b) { return a + b; }, 4096);
  return total / static_cast<double>(N);
}

ExactComplex weyl_sum_limit(const IntegerSequence& seq, const FormalScalar& t) {
  if (seq.kind() != IntegerSequence::Kind::Polynomial)
    throw UnsupportedError(std::string("exact Weyl limit needs a polynomial sequence, got ") + to_string(seq.kind()));
  PhasePolynomial p;
  const auto& c = seq.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    Monomial m;
    if (k) m.emplace_back("n", static_cast<unsigned>(k));
    p.add_term(m, t * Rational(static_cast<long>(c[k])));
  }
  return weyl_limit(p, {"n"});
}

double star_discrepancy(const std::vector<Turn>& sorted) {
  if (sorted.empty()) return 0.0;
  const double N = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double x = sorted[i].to_double();
    worst = std::max({worst, (static_cast<double>(i) + 1) / N - x, x - static_cast<double>(i) / N});
  }
  return std::min(worst, 1.0);
}

Distribution empirical_distribution(const IntegerSequence& seq, const NumericReal& t, unsigned power,
                                    std::int64_t N, unsigned bins) {
  if (bins < 1) throw InvalidArgument("bins must be >= 1");
  if (power < 1) throw InvalidArgument("power must be >= 1");
  if (N < 0) throw InvalidArgument("sample size must be non-negative");
  Distribution d;
  const auto values = seq.range(N);
  d.sorted.resize(values.size());
  const Turn base = t.turn();
  parallel::for_each(N, [&](std::int64_t i) {
    d.sorted[static_cast<std::size_t>(i)] = power_wrapped(values[static_cast<std::size_t>(i)], power) * base;
  });
  std::vector<std::int64_t> counts(bins, 0);
  for (const auto& x : d.sorted) ++counts[static_cast<std::size_t>(((x.bits >> 64) * bins) >> 64)];
  d.frequencies.resize(bins, 0.0);
  if (N > 0)
    for (unsigned b = 0; b < bins; ++b) d.frequencies[b] = static_cast<double>(counts[b]) / static_cast<double>(N);
  std::sort(d.sorted.begin(), d.sorted.end(), [](const Turn& a, const Turn& b) { return a.bits < b.bits; });
  d.star_discrepancy = star_discrepancy(d.sorted);
  return d;
}

double mass(const Distribution& d, const Rational& lo, const Rational& hi, bool closed) {
  if (d.sorted.empty()) return 0.0;
  std::size_t inside = 0;
  for (const auto& x : d.sorted) {
    if (compare_turn(x, lo) < 0) continue;
    const int c = compare_turn(x, hi);
    if (c < 0 || (closed && c == 0)) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(d.sorted.size());
}

double divisibility_density(const IntegerSequence& seq, std::int64_t r, std::int64_t N) {
  if (r < 1) throw InvalidArgument("divisor must be >= 1");
  if (N < 1) throw InvalidArgument("divisibility density needs N >= 1");
  const auto values = seq.range(N);
  std::int64_t hits = 0;
  for (auto v : values) hits += (v % r == 0);
  return static_cast<double>(hits) / static_cast<double>(N);
}

double bohr_recurrence_density(const IntegerSequence& seq, const std::vector<NumericReal>& alphas, double eps,
                               std::int64_t N) {
  if (!(eps > 0)) throw InvalidArgument("epsilon must be positive");
  if (N < 1) throw InvalidArgument("Bohr density needs N >= 1");
  const auto values = seq.range(N);
  std::int64_t hits = 0;
  for (auto v : values) {
    double dist = 0.0;
    for (const auto& a : alphas) dist += fractional_turn(v, a).distance_to_integer();
    hits += (dist <= eps);
  }
  return static_cast<double>(hits) / static_cast<double>(N);
}

}  // namespace ghk

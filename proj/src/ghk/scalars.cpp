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
#include "ghk/scalars.hpp"

#include <cctype>
#include <sstream>

#include "ghk/errors.hpp"

namespace ghk {

Rational make_rational(const Integer& p, const Integer& q) {
  if (q == 0) throw InvalidArgument("rational with zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational make_rational(long long p, long long q) {
  return make_rational(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
}

Integer floor_of(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Rational frac(const Rational& r) { return r - Rational(floor_of(r)); }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

int compare(const Rational& a, const Rational& b) { return cmp(a, b); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return ConfigError("malformed rational literal '" + s + "'"); };
  if (s.empty()) throw bad();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (sgn(den) == 0) throw bad();
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = (s[i++] == '-');
  Integer mantissa = 0;
  long exponent = 0;
  bool any_digit = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    mantissa = mantissa * 10 + (s[i] - '0');
    any_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      mantissa = mantissa * 10 + (s[i] - '0');
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) throw bad();
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used == 0 || e > 4000 || e < -4000) throw bad();
    exponent += e;
    i += used;
  }
  if (i != s.size()) throw bad();
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational out = exponent < 0 ? make_rational(mantissa, scale) : Rational(mantissa * scale);
  return negative ? Rational(-out) : out;
}

// ---------------------------------------------------------------------------

FormalScalar::FormalScalar(const Rational& r) : rational_(r) { rational_.canonicalize(); }

FormalScalar FormalScalar::symbol(const std::string& name, const Rational& coefficient) {
  if (name.empty()) throw InvalidArgument("empty irrational symbol name");
  FormalScalar out;
  if (sgn(coefficient) != 0) out.irrational_.emplace(name, coefficient);
  return out;
}

void FormalScalar::normalize() {
  rational_.canonicalize();
  for (auto it = irrational_.begin(); it != irrational_.end();) {
    it->second.canonicalize();
    if (sgn(it->second) == 0)
      it = irrational_.erase(it);
    else
      ++it;
  }
}

FormalScalar FormalScalar::operator-() const {
  FormalScalar out(*this);
  out.rational_ = -out.rational_;
  for (auto& [_, c] : out.irrational_) c = -c;
  return out;
}

FormalScalar& FormalScalar::operator+=(const FormalScalar& o) {
  rational_ += o.rational_;
  for (const auto& [name, c] : o.irrational_) irrational_[name] += c;
  normalize();
  return *this;
}

FormalScalar& FormalScalar::operator-=(const FormalScalar& o) { return *this += -o; }

FormalScalar& FormalScalar::operator*=(const Rational& r) {
  rational_ *= r;
  for (auto& [_, c] : irrational_) c *= r;
  normalize();
  return *this;
}

FormalScalar operator*(const FormalScalar& a, const FormalScalar& b) {
  if (a.is_rational()) return b * a.rational_part();
  if (b.is_rational()) return a * b.rational_part();
  throw UnsupportedError("product of two irrational formal scalars (" + a.to_string() + ")*(" +
                         b.to_string() + ") leaves the field");
}

bool operator==(const FormalScalar& a, const FormalScalar& b) {
  return a.rational_ == b.rational_ && a.irrational_ == b.irrational_;
}

bool operator<(const FormalScalar& a, const FormalScalar& b) {
  if (int c = cmp(a.rational_, b.rational_); c != 0) return c < 0;
  return a.irrational_ < b.irrational_;
}

FormalScalar FormalScalar::mod_one() const {
  FormalScalar out(*this);
  out.rational_ = frac(rational_);
  return out;
}

std::string FormalScalar::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rational& c, const std::string& name) {
    bool negative = sgn(c) < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (name.empty())
      os << ghk::to_string(mag);
    else if (mag == 1)
      os << name;
    else
      os << ghk::to_string(mag) << "*" << name;
  };
  if (sgn(rational_) != 0 || irrational_.empty()) emit(rational_, "");
  for (const auto& [name, c] : irrational_) emit(c, name);
  return os.str();
}

namespace {

class LiteralParser {
 public:
  LiteralParser(std::string_view text, const std::set<std::string>& declared)
      : text_(text), declared_(declared) {}

  FormalScalar parse() {
    FormalScalar v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("scalar literal '" + std::string(text_) + "': " + why);
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

  FormalScalar expr() {
    FormalScalar acc;
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  FormalScalar term() {
    FormalScalar acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        FormalScalar d = factor();
        if (!d.is_rational() || sgn(d.rational_part()) == 0) fail("division by a non-rational or zero");
        acc *= Rational(1) / d.rational_part();
      } else {
        return acc;
      }
    }
  }

  FormalScalar factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      FormalScalar v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      return FormalScalar(parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (!declared_.count(name)) fail("undeclared symbol '" + name + "'");
      return FormalScalar::symbol(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const std::set<std::string>& declared_;
  std::size_t pos_ = 0;
};

}  // namespace

FormalScalar FormalScalar::parse(std::string_view text, const std::set<std::string>& declared) {
  try {
    return LiteralParser(text, declared).parse();
  } catch (const UnsupportedError& e) {
    throw ConfigError(std::string("scalar literal '") + std::string(text) + "': " + e.what());
  }
}

}  // namespace ghk

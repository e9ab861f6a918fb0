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
#include "ghk/averages.hpp"

#include <algorithm>
#include <cmath>

#include "ghk/errors.hpp"
#include "ghk/parallel.hpp"

namespace ghk {

namespace {

/// p = (integer polynomial) / denominator, evaluated in 128-bit arithmetic.
class IntPolyEvaluator {
 public:
  IntPolyEvaluator(const RationalPolynomial& p, const std::vector<std::string>& vars) {
    if (!is_integer_valued(p)) throw InvalidArgument("box sequence " + p.to_string() + " is not integer valued");
    Integer den = 1;
    for (const auto& [m, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    if (!den.fits_slong_p()) throw ResourceError("box sequence denominator too large");
    den_ = den.get_si();
    for (const auto& [m, c] : p.terms()) {
      Integer num = c.get_num() * (den / c.get_den());
      if (!num.fits_slong_p()) throw ResourceError("box sequence coefficient too large");
      Term t{num.get_si(), {}};
      for (const auto& [v, e] : m) {
        auto it = std::find(vars.begin(), vars.end(), v);
        if (it == vars.end()) throw InvalidArgument("box sequence uses undeclared variable '" + v + "'");
        t.factors.emplace_back(static_cast<std::size_t>(it - vars.begin()), e);
      }
      terms_.push_back(std::move(t));
    }
  }

  std::int64_t operator()(const std::vector<std::int64_t>& point) const {
    __int128 acc = 0;
    for (const auto& t : terms_) {
      __int128 m = t.coefficient;
      for (const auto& [i, e] : t.factors)
        for (unsigned k = 0; k < e; ++k) {
          m *= point[i];
          if (m > kLimit || m < -kLimit) throw ResourceError("box sequence value overflows");
        }
      acc += m;
    }
    acc /= den_;
    if (acc > INT64_MAX || acc < INT64_MIN) throw ResourceError("box sequence value overflows 64 bits");
    return static_cast<std::int64_t>(acc);
  }

 private:
  static constexpr __int128 kLimit = static_cast<__int128>(1) << 100;
  struct Term {
    std::int64_t coefficient;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };
  std::vector<Term> terms_;
  std::int64_t den_ = 1;
};

void check_weights(const AverageSpec& spec, std::int64_t rows) {
  if (spec.weights.empty()) return;
  if (static_cast<std::int64_t>(spec.weights.size()) != rows)
    throw InvalidArgument("expected " + std::to_string(rows) + " weights, got " + std::to_string(spec.weights.size()));
  for (const auto& w : spec.weights)
    if (!(std::abs(w) <= spec.weight_bound * (1 + 1e-12)))
      throw InvalidArgument("weight exceeds the declared bound " + std::to_string(spec.weight_bound));
}

template <class F>
void check_count(const std::vector<F>& fs, const IterateTable& t) {
  if (fs.size() != t.ell)
    throw InvalidArgument(std::to_string(fs.size()) + " functions for " + std::to_string(t.ell) + " sequences");
}

/// Per-point coordinates so shifted indices can be formed without tables.
struct ShiftGeometry {
  explicit ShiftGeometry(const CyclicSystem& sys) : factors(sys.factors()) {
    const std::size_t k = factors.size();
    strides.assign(k, 1);
    for (std::size_t i = k; i-- > 1;) strides[i - 1] = strides[i] * factors[i].modulus;
  }
  /// (a * r_k mod N_k) per factor.
  std::vector<std::int64_t> offsets(std::int64_t a) const {
    std::vector<std::int64_t> out(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const __int128 v = static_cast<__int128>(a) * factors[i].step;
      std::int64_t r = static_cast<std::int64_t>(v % factors[i].modulus);
      out[i] = r < 0 ? r + factors[i].modulus : r;
    }
    return out;
  }
  std::int64_t shifted(std::int64_t x, const std::vector<std::int64_t>& off) const {
    std::int64_t out = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::int64_t c = (x / strides[i]) % factors[i].modulus;
      std::int64_t n = c + off[i];
      if (n >= factors[i].modulus) n -= factors[i].modulus;
      out += n * strides[i];
    }
    return out;
  }
  std::vector<CyclicSystem::Factor> factors;
  std::vector<std::int64_t> strides;
};

CyclicFunction add_functions(CyclicFunction a, const CyclicFunction& b) {
  if (a.empty()) return b;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

IterateTable box_table(std::size_t s, std::int64_t N) {
  AverageSpec spec;
  spec.box = FolnerBox{std::vector<std::int64_t>(s, 1), std::vector<std::int64_t>(s, N)};
  for (unsigned j = 0; j < s; ++j) spec.box_variables.push_back("n" + std::to_string(j + 1));
  const unsigned cube = 1u << s;
  for (unsigned e = 1; e < cube; ++e) {
    RationalPolynomial p;
    for (unsigned j = 0; j < s; ++j)
      if (e >> j & 1u) p += RationalPolynomial::variable(spec.box_variables[j]);
    spec.box_sequences.push_back(p);
  }
  return iterate_table(spec);
}

void check_cubic(unsigned s, std::size_t count, std::int64_t N) {
  if (s < 1) throw InvalidArgument("cubic average needs s >= 1");
  if (s > kMaxCubicDegree)
    throw ResourceError("cubic average degree " + std::to_string(s) + " exceeds the cap " + std::to_string(kMaxCubicDegree));
  if (count != (1u << s) - 1) throw InvalidArgument("cubic average of degree s needs 2^s - 1 functions");
  if (N < 1) throw InvalidArgument("cubic average needs N >= 1");
}

IterateTable square_table(const IntegerSequence& a, const IntegerSequence& b, std::int64_t N) {
  IterateTable t;
  t.ell = 3;
  const auto av = a.range(N), bv = b.range(N);
  for (std::int64_t n = 0; n < N; ++n) {
    const auto x = av[static_cast<std::size_t>(n)], y = bv[static_cast<std::size_t>(n)];
    std::int64_t z;
    if (__builtin_add_overflow(x, y, &z)) throw ResourceError("a(n) + b(n) overflows");
    t.exponents.insert(t.exponents.end(), {x, y, z});
  }
  return t;
}

IterateTable double_linear_table(std::int64_t N) {
  IterateTable t;
  t.ell = 3;
  for (std::int64_t r = 1; r <= N; ++r)
    for (std::int64_t s = 1; s <= N; ++s) t.exponents.insert(t.exponents.end(), {r, s, r + s});
  return t;
}

}  // namespace

std::int64_t FolnerBox::size() const {
  std::int64_t n = 1;
  for (auto s : sides)
    if (__builtin_mul_overflow(n, s, &n)) throw ResourceError("Følner box too large");
  return n;
}

IterateTable iterate_table(const AverageSpec& spec) {
  IterateTable t;
  if (spec.box) {
    const auto& box = *spec.box;
    const std::size_t k = box.sides.size();
    if (box.corner.size() != k || spec.box_variables.size() != k)
      throw InvalidArgument("box corner, sides and variables must have the same length");
    for (auto s : box.sides)
      if (s < 1) throw InvalidArgument("box sides must be >= 1");
    if (spec.box_sequences.empty()) throw InvalidArgument("an average needs at least one sequence");
    if (!spec.sequences.empty()) throw InvalidArgument("give either sequences or box sequences, not both");
    t.ell = spec.box_sequences.size();
    std::vector<IntPolyEvaluator> evals;
    for (const auto& p : spec.box_sequences) evals.emplace_back(p, spec.box_variables);
    const std::int64_t rows = box.size();
    t.exponents.resize(static_cast<std::size_t>(rows) * t.ell);
    parallel::for_each(rows, [&](std::int64_t i) {
      std::vector<std::int64_t> point(k);
      std::int64_t rest = i;
      for (std::size_t d = k; d-- > 0;) {
        point[d] = box.corner[d] + rest % box.sides[d];
        rest /= box.sides[d];
      }
      for (std::size_t j = 0; j < t.ell; ++j) t.exponents[static_cast<std::size_t>(i) * t.ell + j] = evals[j](point);
    });
    check_weights(spec, rows);
  } else {
    if (spec.sequences.empty()) throw InvalidArgument("an average needs at least one sequence");
    if (spec.N < 1) throw InvalidArgument("an average needs N >= 1");
    t.ell = spec.sequences.size();
    t.exponents.resize(static_cast<std::size_t>(spec.N) * t.ell);
    for (std::size_t j = 0; j < t.ell; ++j) {
      const auto v = spec.sequences[j].range(spec.N);
      for (std::int64_t n = 0; n < spec.N; ++n) t.exponents[static_cast<std::size_t>(n) * t.ell + j] = v[static_cast<std::size_t>(n)];
    }
    check_weights(spec, spec.N);
  }
  t.weights = spec.weights;
  return t;
}

CyclicFunction average_over(const CyclicSystem& sys, const std::vector<CyclicFunction>& fs, const IterateTable& t) {
  check_count(fs, t);
  for (const auto& f : fs) check_function(sys, f);
  const std::int64_t rows = t.rows();
  if (rows == 0) throw InvalidArgument("empty index set");
  const ShiftGeometry geo(sys);
  const std::int64_t size = sys.size();
  CyclicFunction sum = parallel::reduce<CyclicFunction>(
      rows,
      [&](std::int64_t b, std::int64_t e) {
        CyclicFunction acc(static_cast<std::size_t>(size), 0.0);
        std::vector<std::vector<std::int64_t>> offs(t.ell);
        for (std::int64_t i = b; i < e; ++i) {
          for (std::size_t j = 0; j < t.ell; ++j) offs[j] = geo.offsets(t.exponents[static_cast<std::size_t>(i) * t.ell + j]);
          const Complex w = t.weights.empty() ? Complex(1.0) : t.weights[static_cast<std::size_t>(i)];
          for (std::int64_t x = 0; x < size; ++x) {
            Complex v = w;
            for (std::size_t j = 0; j < t.ell; ++j) v *= fs[j][static_cast<std::size_t>(geo.shifted(x, offs[j]))];
            acc[static_cast<std::size_t>(x)] += v;
          }
        }
        return acc;
      },
      add_functions, 64);
  return scale(sum, 1.0 / static_cast<double>(rows));
}

NumTrig average_over(const NumericAffine& sys, const std::vector<NumTrig>& fs, const IterateTable& t) {
  check_count(fs, t);
  for (const auto& f : fs)
    if (f.dimension() != sys.dimension()) throw InvalidArgument("function dimension does not match the system");
  const std::int64_t rows = t.rows();
  if (rows == 0) throw InvalidArgument("empty index set");
  NumTrig sum = parallel::reduce<NumTrig>(
      rows,
      [&](std::int64_t b, std::int64_t e) {
        NumTrig acc(sys.dimension());
        for (std::int64_t i = b; i < e; ++i) {
          const Complex w = t.weights.empty() ? Complex(1.0) : t.weights[static_cast<std::size_t>(i)];
          NumTrig term = NumTrig::constant(sys.dimension(), w);
          for (std::size_t j = 0; j < t.ell; ++j)
            term = term * sys.apply_iterate(fs[j], t.exponents[static_cast<std::size_t>(i) * t.ell + j]);
          acc += term;
        }
        return acc;
      },
      [](NumTrig a, const NumTrig& b) { return a += b; }, 16);
  return sum.scaled(1.0 / static_cast<double>(rows));
}

Averaged<CyclicFunction> multiple_average(const CyclicSystem& sys, const std::vector<CyclicFunction>& fs,
                                         const AverageSpec& spec) {
  Averaged<CyclicFunction> out{average_over(sys, fs, iterate_table(spec)), 0.0};
  out.l2_norm = l2_norm(out.function);
  return out;
}

Averaged<NumTrig> multiple_average(const NumericAffine& sys, const std::vector<NumTrig>& fs, const AverageSpec& spec) {
  Averaged<NumTrig> out{average_over(sys, fs, iterate_table(spec)), 0.0};
  out.l2_norm = out.function.l2_norm();
  return out;
}

TrigPolynomial multiple_average_symbolic(const AffineSystem& sys, const std::vector<IntegerSequence>& sequences,
                                         const std::vector<TrigPolynomial>& fs, AverageCensus* census) {
  if (sequences.empty() || sequences.size() != fs.size())
    throw InvalidArgument("symbolic average needs one function per sequence, at least one");
  const auto n = RationalPolynomial::variable("n");
  SymbolicTrig product = SymbolicTrig::constant(sys.dimension());
  for (std::size_t j = 0; j < sequences.size(); ++j) {
    const auto& seq = sequences[j];
    if (seq.kind() != IntegerSequence::Kind::Polynomial)
      throw UnsupportedError(std::string("symbolic averages need polynomial sequences, got ") + to_string(seq.kind()));
    RationalPolynomial a;
    RationalPolynomial power(Rational(1));
    for (auto c : seq.coefficients()) {
      a += power.scaled(Rational(static_cast<long>(c)));
      power = power * n;
    }
    product = product * apply_iterate(sys, SymbolicTrig::from(fs[j]), a);
  }
  return average_limit(product, {"n"}, census).to_trig();
}

CyclicFunction cubic_average(const CyclicSystem& sys, const std::vector<CyclicFunction>& fs, unsigned s,
                             std::int64_t N) {
  check_cubic(s, fs.size(), N);
  return average_over(sys, fs, box_table(s, N));
}

NumTrig cubic_average(const NumericAffine& sys, const std::vector<NumTrig>& fs, unsigned s, std::int64_t N) {
  check_cubic(s, fs.size(), N);
  return average_over(sys, fs, box_table(s, N));
}

SquareComparison<CyclicFunction> square_vs_double_linear(const CyclicSystem& sys, const IntegerSequence& a,
                                                         const IntegerSequence& b, const CyclicFunction& f1,
                                                         const CyclicFunction& f2, const CyclicFunction& f3,
                                                         std::int64_t N) {
  if (N < 1) throw InvalidArgument("square average needs N >= 1");
  SquareComparison<CyclicFunction> out;
  out.lhs = average_over(sys, {f1, f2, f3}, square_table(a, b, N));
  out.rhs = average_over(sys, {f1, f2, f3}, double_linear_table(N));
  out.distance = l2_distance(out.lhs, out.rhs);
  return out;
}

SquareComparison<NumTrig> square_vs_double_linear(const NumericAffine& sys, const IntegerSequence& a,
                                                  const IntegerSequence& b, const NumTrig& f1, const NumTrig& f2,
                                                  const NumTrig& f3, std::int64_t N) {
  if (N < 1) throw InvalidArgument("square average needs N >= 1");
  SquareComparison<NumTrig> out;
  out.lhs = average_over(sys, {f1, f2, f3}, square_table(a, b, N));
  out.rhs = average_over(sys, {f1, f2, f3}, double_linear_table(N));
  out.distance = l2_distance(out.lhs, out.rhs);
  return out;
}

double recurrence_average(const CyclicSystem& sys, const std::vector<std::int64_t>& A, const IntegerSequence& a,
                          const std::vector<std::int64_t>& ks, std::int64_t N) {
  if (A.empty()) throw InvalidArgument("recurrence set must be nonempty");
  if (N < 1) throw InvalidArgument("recurrence average needs N >= 1");
  const auto one_a = indicator(sys, A);
  IterateTable t;
  t.ell = ks.size() + 1;
  const auto v = a.range(N);
  for (auto an : v) {
    t.exponents.push_back(0);
    for (auto k : ks) {
      std::int64_t e;
      if (__builtin_mul_overflow(k, an, &e)) throw ResourceError("k * a(n) overflows");
      t.exponents.push_back(e);
    }
  }
  return integral(sys, average_over(sys, std::vector<CyclicFunction>(t.ell, one_a), t)).real();
}

std::vector<ConvergenceRow> convergence_table(const std::function<double(std::int64_t)>& producer,
                                              const std::vector<std::int64_t>& Ns) {
  for (std::size_t i = 1; i < Ns.size(); ++i)
    if (Ns[i] <= Ns[i - 1]) throw InvalidArgument("convergence N-list must be strictly increasing");
  std::vector<ConvergenceRow> rows;
  for (auto N : Ns) rows.push_back({N, producer(N)});
  return rows;
}

ExactComplex l2_distance_squared(const TrigPolynomial& f, const TrigPolynomial& g) {
  const TrigPolynomial d = f - g;
  ExactComplex acc;
  for (const auto& [k, c] : d.terms()) acc += c * c.conj();
  return acc;
}

}  // namespace ghk

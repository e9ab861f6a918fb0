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
#include "ghk/calculus.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "ghk/errors.hpp"
#include "ghk/parallel.hpp"

namespace ghk {

namespace {

constexpr double kWorkCap = 4e10;

void check_degree(unsigned s) {
  if (s > kMaxDegree) throw ResourceError("degree " + std::to_string(s) + " exceeds the limit of " + std::to_string(kMaxDegree));
}

void check_work(double work, const char* what) {
  if (work > kWorkCap) throw ResourceError(std::string(what) + ": estimated work exceeds cap");
}

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > (std::int64_t{1} << 62) / std::max<std::int64_t>(b, 1)) throw ResourceError("parameter grid too large");
    r *= b;
  }
  return r;
}

/// Flat index -> parameter vector with entries offset + [0, base).
void unflatten(std::int64_t idx, std::int64_t base, std::int64_t offset, std::vector<std::int64_t>& out) {
  for (auto& v : out) {
    v = offset + idx % base;
    idx /= base;
  }
}

unsigned popcount(unsigned e) { return static_cast<unsigned>(__builtin_popcount(e)); }

/// Shift tables for n in [0, count).
std::vector<std::vector<std::int64_t>> shift_tables(const CyclicSystem& sys, std::int64_t count) {
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t n = 0; n < count; ++n) out.push_back(sys.shift_table(n));
  return out;
}

std::vector<Complex> add_vectors(std::vector<Complex> a, const std::vector<Complex>& b) {
  if (a.empty()) return b;
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

Complex add(Complex a, Complex b) { return a + b; }

/// E_{h} int Delta_h f over h in offset + [0, base)^s.
Complex cube_average(const CyclicSystem& sys, const CyclicFunction& f, unsigned s, std::int64_t base, std::int64_t offset) {
  check_function(sys, f);
  if (s == 0) return integral(sys, f);
  const std::int64_t L = sys.period();
  const std::int64_t points = ipow(base, s);
  check_work(static_cast<double>(points) * static_cast<double>(1u << s) * static_cast<double>(sys.size()),
             "seminorm");
  const auto tables = shift_tables(sys, L);
  const CyclicFunction fc = conj(f);
  const std::size_t size = f.size();
  const unsigned corners = 1u << s;
  Complex total = parallel::reduce<Complex>(
      points,
      [&](std::int64_t b, std::int64_t e) {
        Complex acc = 0.0;
        std::vector<std::int64_t> h(s);
        std::vector<const std::int64_t*> perm(corners);
        for (std::int64_t idx = b; idx < e; ++idx) {
          unflatten(idx, base, offset, h);
          for (unsigned eps = 0; eps < corners; ++eps) {
            std::int64_t n = 0;
            for (unsigned j = 0; j < s; ++j)
              if (eps >> j & 1u) n += h[j];
            n %= L;
            if (n < 0) n += L;
            perm[eps] = tables[static_cast<std::size_t>(n)].data();
          }
          Complex sum = 0.0;
          for (std::size_t x = 0; x < size; ++x) {
            Complex p = f[static_cast<std::size_t>(perm[0][x])];
            for (unsigned eps = 1; eps < corners; ++eps) {
              const auto y = static_cast<std::size_t>(perm[eps][x]);
              p *= (popcount(eps) & 1u) ? fc[y] : f[y];
            }
            sum += p;
          }
          acc += sum;
        }
        return acc;
      },
      add, 16);
  return total / (static_cast<double>(points) * static_cast<double>(size));
}

/// E_{m} prod_{eps != 0} over m in offset + [0, base)^s.
CyclicFunction dual_cube(const CyclicSystem& sys, const CyclicFunction& f, unsigned s, std::int64_t base,
                         std::int64_t offset) {
  check_function(sys, f);
  if (s == 0) throw InvalidArgument("dual function needs s >= 1");
  const std::int64_t L = sys.period();
  const std::int64_t points = ipow(base, s);
  check_work(static_cast<double>(points) * static_cast<double>(1u << s) * static_cast<double>(sys.size()), "dual");
  const auto tables = shift_tables(sys, L);
  const CyclicFunction fc = conj(f);
  const std::size_t size = f.size();
  const unsigned corners = 1u << s;
  CyclicFunction total = parallel::reduce<CyclicFunction>(
      points,
      [&](std::int64_t b, std::int64_t e) {
        CyclicFunction acc(size, 0.0);
        std::vector<std::int64_t> m(s);
        std::vector<const std::int64_t*> perm(corners);
        for (std::int64_t idx = b; idx < e; ++idx) {
          unflatten(idx, base, offset, m);
          for (unsigned eps = 1; eps < corners; ++eps) {
            std::int64_t n = 0;
            for (unsigned j = 0; j < s; ++j)
              if (eps >> j & 1u) n += m[j];
            n %= L;
            if (n < 0) n += L;
            perm[eps] = tables[static_cast<std::size_t>(n)].data();
          }
          for (std::size_t x = 0; x < size; ++x) {
            Complex p = 1.0;
            for (unsigned eps = 1; eps < corners; ++eps) {
              const auto y = static_cast<std::size_t>(perm[eps][x]);
              p *= (popcount(eps) & 1u) ? fc[y] : f[y];
            }
            acc[x] += p;
          }
        }
        return acc;
      },
      add_vectors, 16);
  for (auto& v : total) v /= static_cast<double>(points);
  return total;
}

std::mutex g_fftw_mutex;

}  // namespace

const char* to_string(SeminormMode m) {
  switch (m) {
    case SeminormMode::CyclicExact: return "cyclic-exact";
    case SeminormMode::Symbolic: return "symbolic";
    case SeminormMode::Truncated: return "truncated";
  }
  return "?";
}

SeminormMode parse_seminorm_mode(const std::string& s) {
  if (s == "cyclic-exact") return SeminormMode::CyclicExact;
  if (s == "symbolic") return SeminormMode::Symbolic;
  if (s == "truncated") return SeminormMode::Truncated;
  throw ConfigError("unknown mode '" + s + "' (expected cyclic-exact, symbolic or truncated)");
}

double seminorm_root(Complex power, unsigned s) {
  if (s == 0) return std::abs(power);
  if (std::abs(power.imag()) > 1e-9)
    throw InconsistencyError("seminorm power has imaginary part " + std::to_string(power.imag()));
  double re = power.real();
  if (re < -1e-6) throw InconsistencyError("seminorm power is negative: " + std::to_string(re));
  if (re < 0) re = 0;
  return std::pow(re, 1.0 / static_cast<double>(1u << s));
}

CyclicFunction mult_derivative(const CyclicSystem& sys, const CyclicFunction& f, const std::vector<std::int64_t>& h) {
  check_function(sys, f);
  if (h.size() > kMaxDegree) throw ResourceError("derivative order exceeds limit");
  CyclicFunction out(f.size(), 1.0);
  const unsigned corners = 1u << h.size();
  for (unsigned eps = 0; eps < corners; ++eps) {
    std::int64_t n = 0;
    for (std::size_t j = 0; j < h.size(); ++j)
      if (eps >> j & 1u) n += h[j];
    CyclicFunction g = apply_iterate(sys, f, n);
    if (popcount(eps) & 1u) g = conj(g);
    out = multiply(out, g);
  }
  return out;
}

CyclicFunction invariant_projection(const CyclicSystem& sys, const CyclicFunction& f) {
  check_function(sys, f);
  const auto step = sys.shift_table(1);
  const std::size_t size = f.size();
  std::vector<std::int64_t> orbit(size, -1);
  std::vector<Complex> sums;
  std::vector<std::int64_t> counts;
  for (std::size_t x = 0; x < size; ++x) {
    if (orbit[x] >= 0) continue;
    const auto id = static_cast<std::int64_t>(sums.size());
    Complex s = 0.0;
    std::int64_t c = 0;
    for (std::size_t y = x; orbit[y] < 0; y = static_cast<std::size_t>(step[y])) {
      orbit[y] = id;
      s += f[y];
      ++c;
    }
    sums.push_back(s);
    counts.push_back(c);
  }
  CyclicFunction out(size);
  for (std::size_t x = 0; x < size; ++x) {
    const auto id = static_cast<std::size_t>(orbit[x]);
    out[x] = sums[id] / static_cast<double>(counts[id]);
  }
  return out;
}

Complex seminorm_power_definition(const CyclicSystem& sys, const CyclicFunction& f, unsigned s) {
  check_degree(s);
  return cube_average(sys, f, s, sys.period(), 0);
}

Complex seminorm_power(const CyclicSystem& sys, const CyclicFunction& f, unsigned s) {
  check_degree(s);
  check_function(sys, f);
  if (s == 0) return integral(sys, f);
  if (s == 1) {
    const CyclicFunction p = invariant_projection(sys, f);
    double acc = 0.0;
    for (const auto& v : p) acc += std::norm(v);
    return acc / static_cast<double>(p.size());
  }
  const std::int64_t L = sys.period();
  check_work(std::pow(static_cast<double>(L), s - 1) * static_cast<double>(sys.size()) * 4.0, "seminorm");
  const CyclicFunction fc = conj(f);
  Complex total = parallel::reduce<Complex>(
      L,
      [&](std::int64_t b, std::int64_t e) {
        Complex acc = 0.0;
        for (std::int64_t h = b; h < e; ++h) {
          const auto perm = sys.shift_table(h);
          CyclicFunction d(f.size());
          for (std::size_t x = 0; x < f.size(); ++x) d[x] = f[x] * fc[static_cast<std::size_t>(perm[x])];
          acc += seminorm_power(sys, d, s - 1);
        }
        return acc;
      },
      add, 1);
  return total / static_cast<double>(L);
}

Complex seminorm_power_truncated(const CyclicSystem& sys, const CyclicFunction& f, unsigned s, std::int64_t H) {
  check_degree(s);
  if (H < 1) throw InvalidArgument("truncation H must be >= 1");
  return cube_average(sys, f, s, H, 1);
}

double u2_via_fft(const CyclicSystem& sys, const CyclicFunction& f) {
  check_function(sys, f);
  if (!sys.is_ergodic())
    throw PreconditionError("u2_via_fft needs an ergodic shift (gcd(r, N) = 1); use the definition mode");
  const std::size_t size = f.size();
  std::vector<int> dims;
  for (const auto& fac : sys.factors()) dims.push_back(static_cast<int>(fac.modulus));
  fftw_complex* buf = fftw_alloc_complex(size);
  if (!buf) throw ResourceError("fftw allocation failed");
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < size; ++i) {
    buf[i][0] = f[i].real();
    buf[i][1] = f[i].imag();
  }
  fftw_execute(plan);
  double acc = 0.0;
  const double inv = 1.0 / static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double n2 = (buf[i][0] * buf[i][0] + buf[i][1] * buf[i][1]) * inv * inv;
    acc += n2 * n2;
  }
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return std::pow(acc, 0.25);
}

CyclicFunction dual_definition(const CyclicSystem& sys, const CyclicFunction& f, unsigned s) {
  check_degree(s);
  return dual_cube(sys, f, s, sys.period(), 0);
}

CyclicFunction dual_function(const CyclicSystem& sys, const CyclicFunction& f, unsigned s) {
  check_degree(s);
  check_function(sys, f);
  if (s == 0) throw InvalidArgument("dual function needs s >= 1");
  if (s == 1) return conj(invariant_projection(sys, f));
  const std::int64_t L = sys.period();
  const unsigned t = s - 1;
  const std::int64_t points = ipow(L, t);
  check_work(static_cast<double>(points) * static_cast<double>(1u << t) * static_cast<double>(sys.size()), "dual");
  const auto tables = shift_tables(sys, L);
  const CyclicFunction fc = conj(f);
  const std::size_t size = f.size();
  const unsigned corners = 1u << t;
  CyclicFunction total = parallel::reduce<CyclicFunction>(
      points,
      [&](std::int64_t b, std::int64_t e) {
        CyclicFunction acc(size, 0.0);
        std::vector<std::int64_t> m(t);
        std::vector<const std::int64_t*> perm(corners);
        CyclicFunction star(size), full(size);
        for (std::int64_t idx = b; idx < e; ++idx) {
          unflatten(idx, L, 0, m);
          for (unsigned eps = 0; eps < corners; ++eps) {
            std::int64_t n = 0;
            for (unsigned j = 0; j < t; ++j)
              if (eps >> j & 1u) n += m[j];
            perm[eps] = tables[static_cast<std::size_t>(n % L)].data();
          }
          for (std::size_t x = 0; x < size; ++x) {
            Complex p = 1.0;
            for (unsigned eps = 1; eps < corners; ++eps) {
              const auto y = static_cast<std::size_t>(perm[eps][x]);
              p *= (popcount(eps) & 1u) ? fc[y] : f[y];
            }
            star[x] = p;
            full[x] = std::conj(p * f[x]);
          }
          const CyclicFunction proj = invariant_projection(sys, full);
          for (std::size_t x = 0; x < size; ++x) acc[x] += star[x] * proj[x];
        }
        return acc;
      },
      add_vectors, 16);
  for (auto& v : total) v /= static_cast<double>(points);
  return total;
}

CyclicFunction dual_truncated(const CyclicSystem& sys, const CyclicFunction& f, unsigned s, std::int64_t M) {
  check_degree(s);
  if (M < 1) throw InvalidArgument("truncation M must be >= 1");
  return dual_cube(sys, f, s, M, 1);
}

// ---------------------------------------------------------------------------

SymbolicTrig mult_derivative(const AffineSystem& sys, const SymbolicTrig& f, const std::vector<RationalPolynomial>& h) {
  if (h.size() > kMaxDegree) throw ResourceError("derivative order exceeds limit");
  SymbolicTrig out = SymbolicTrig::constant(f.dimension());
  const unsigned corners = 1u << h.size();
  for (unsigned eps = 0; eps < corners; ++eps) {
    RationalPolynomial n;
    for (std::size_t j = 0; j < h.size(); ++j)
      if (eps >> j & 1u) n += h[j];
    SymbolicTrig g = apply_iterate(sys, f, n);
    if (popcount(eps) & 1u) g = g.conj();
    out = out * g;
  }
  return out;
}

std::vector<std::string> fresh_variables(const std::string& prefix, unsigned count, const std::set<std::string>& used) {
  std::vector<std::string> out;
  for (unsigned i = 1; out.size() < count; ++i) {
    std::string name = prefix + std::to_string(i);
    if (!used.count(name)) out.push_back(name);
  }
  return out;
}

SymbolicTrig seminorm_power_symbolic(const AffineSystem& sys, const SymbolicTrig& f, unsigned s, AverageCensus* census) {
  check_degree(s);
  if (s == 0) return integral(f);
  const auto names = fresh_variables("u", s, f.variables());
  std::vector<RationalPolynomial> h;
  for (const auto& n : names) h.push_back(RationalPolynomial::variable(n));
  const SymbolicTrig d = mult_derivative(sys, f, h);
  return average_limit(integral(d), std::set<std::string>(names.begin(), names.end()), census);
}

SymbolicSeminorm gowers_seminorm_symbolic(const AffineSystem& sys, const TrigPolynomial& f, unsigned s,
                                          const SymbolTable& symbols) {
  SymbolicSeminorm out;
  out.power = seminorm_power_symbolic(sys, SymbolicTrig::from(f), s).to_scalar();
  out.exact_zero = out.power.is_structural_zero();
  out.value = out.exact_zero ? 0.0 : seminorm_root(out.power.numeric(symbols), s);
  return out;
}

SymbolicTrig dual_symbolic(const AffineSystem& sys, const SymbolicTrig& f, unsigned s, AverageCensus* census) {
  check_degree(s);
  if (s == 0) throw InvalidArgument("dual function needs s >= 1");
  const auto names = fresh_variables("m", s, f.variables());
  SymbolicTrig prod = SymbolicTrig::constant(f.dimension());
  const unsigned corners = 1u << s;
  for (unsigned eps = 1; eps < corners; ++eps) {
    RationalPolynomial n;
    for (unsigned j = 0; j < s; ++j)
      if (eps >> j & 1u) n += RationalPolynomial::variable(names[j]);
    SymbolicTrig g = apply_iterate(sys, f, n);
    if (popcount(eps) & 1u) g = g.conj();
    prod = prod * g;
  }
  return average_limit(prod, std::set<std::string>(names.begin(), names.end()), census);
}

TrigPolynomial dual_symbolic(const AffineSystem& sys, const TrigPolynomial& f, unsigned s) {
  return dual_symbolic(sys, SymbolicTrig::from(f), s).to_trig();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<NumTrig> iterate_table(const NumericAffine& sys, const NumTrig& f, std::int64_t count) {
  std::vector<NumTrig> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t n = 0; n < count; ++n) out.push_back(sys.apply_iterate(f, n));
  return out;
}

}  // namespace

Complex seminorm_power_truncated(const NumericAffine& sys, const NumTrig& f, unsigned s, std::int64_t H) {
  check_degree(s);
  if (H < 1) throw InvalidArgument("truncation H must be >= 1");
  if (s == 0) return f.integral();
  const std::int64_t points = ipow(H, s);
  const auto it = iterate_table(sys, f, static_cast<std::int64_t>(s) * H + 1);
  std::vector<NumTrig> itc;
  for (const auto& g : it) itc.push_back(g.conj());
  const unsigned corners = 1u << s;
  Complex total = parallel::reduce<Complex>(
      points,
      [&](std::int64_t b, std::int64_t e) {
        Complex acc = 0.0;
        std::vector<std::int64_t> h(s);
        for (std::int64_t idx = b; idx < e; ++idx) {
          unflatten(idx, H, 1, h);
          NumTrig p = it[0];
          for (unsigned eps = 1; eps < corners; ++eps) {
            std::int64_t n = 0;
            for (unsigned j = 0; j < s; ++j)
              if (eps >> j & 1u) n += h[j];
            p = p * ((popcount(eps) & 1u) ? itc[static_cast<std::size_t>(n)] : it[static_cast<std::size_t>(n)]);
          }
          acc += p.integral();
        }
        return acc;
      },
      add, 64);
  return total / static_cast<double>(points);
}

NumTrig dual_truncated(const NumericAffine& sys, const NumTrig& f, unsigned s, std::int64_t M) {
  check_degree(s);
  if (s == 0) throw InvalidArgument("dual function needs s >= 1");
  if (M < 1) throw InvalidArgument("truncation M must be >= 1");
  const std::int64_t points = ipow(M, s);
  const auto it = iterate_table(sys, f, static_cast<std::int64_t>(s) * M + 1);
  std::vector<NumTrig> itc;
  for (const auto& g : it) itc.push_back(g.conj());
  const unsigned corners = 1u << s;
  const std::size_t dim = f.dimension();
  NumTrig total = parallel::reduce<NumTrig>(
      points,
      [&](std::int64_t b, std::int64_t e) {
        NumTrig acc(dim);
        std::vector<std::int64_t> m(s);
        for (std::int64_t idx = b; idx < e; ++idx) {
          unflatten(idx, M, 1, m);
          NumTrig p = NumTrig::constant(dim, 1.0);
          for (unsigned eps = 1; eps < corners; ++eps) {
            std::int64_t n = 0;
            for (unsigned j = 0; j < s; ++j)
              if (eps >> j & 1u) n += m[j];
            p = p * ((popcount(eps) & 1u) ? itc[static_cast<std::size_t>(n)] : it[static_cast<std::size_t>(n)]);
          }
          acc += p;
        }
        return acc;
      },
      [](NumTrig a, const NumTrig& b) { return a += b; }, 64);
  return total.scaled(1.0 / static_cast<double>(points));
}

}  // namespace ghk

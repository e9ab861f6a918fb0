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
#include "ghk/runner.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <variant>

#include "ghk/averages.hpp"
#include "ghk/calculus.hpp"
#include "ghk/expected.hpp"
#include "ghk/parallel.hpp"
#include "ghk/params.hpp"
#include "ghk/random.hpp"
#include "ghk/scenarios.hpp"
#include "ghk/sequences.hpp"

namespace ghk {

namespace {

using nlohmann::json;

// --- inputs --------------------------------------------------------------

struct Context {
  SymbolTable symbols = SymbolTable::defaults();
  std::uint64_t seed = 1;
};

using System = std::variant<CyclicSystem, AffineSystem>;

FormalScalar scalar_literal(const json& v, const Context& ctx, const std::string& where) {
  if (v.is_number_integer()) return FormalScalar(Rational(v.get<long>()));
  if (!v.is_string()) throw ConfigError(where + ": expected a scalar literal string");
  return FormalScalar::parse(v.get<std::string>(), ctx.symbols.names());
}

NumericReal real_literal(const json& v, const std::string& where) {
  if (v.is_number()) return NumericReal::parse(v.dump());
  if (!v.is_string()) throw ConfigError(where + ": expected a real literal");
  try {
    return NumericReal::parse(v.get<std::string>());
  } catch (const InvalidArgument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

Complex complex_number(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(where + ": expected a number or a [re, im] pair");
}

ExactComplex exact_amplitude(const json& v, const std::string& where) {
  if (v.is_array()) {
    if (v.size() != 2) throw ConfigError(where + ": expected a [re, im] pair");
    return ExactComplex(rational_literal(v[0], where)) + ExactComplex::i() * ExactComplex(rational_literal(v[1], where));
  }
  return ExactComplex(rational_literal(v, where));
}

System read_system(const json& spec, const Context& ctx) {
  ParamReader in(spec, "system");
  const auto kind = in.require<std::string>("kind");
  if (kind == "cyclic") {
    if (in.has("factors")) {
      std::vector<CyclicSystem::Factor> factors;
      for (const auto& f : in.raw("factors")) {
        ParamReader fr(f, "system.factors");
        factors.push_back({fr.require<std::int64_t>("N"), fr.get<std::int64_t>("step", 1)});
        fr.finish();
      }
      in.finish();
      return CyclicSystem(std::move(factors));
    }
    const auto N = in.require<std::int64_t>("N");
    const auto step = in.get<std::int64_t>("step", 1);
    in.finish();
    if (N < 1 || N > (1 << 20)) throw ConfigError("system: N must lie in [1, 2^20]");
    return CyclicSystem(N, step);
  }
  if (kind == "skew") {
    FormalScalar a = in.has("alpha") ? scalar_literal(in.raw("alpha"), ctx, "system.alpha") : FormalScalar::symbol("alpha");
    in.finish();
    return quadratic_skew(a);
  }
  if (kind == "affine") {
    IntMatrix m;
    const json& rows = in.require("matrix");
    if (!rows.is_array()) throw ConfigError("system.matrix must be an array of rows");
    for (const auto& row : rows) {
      std::vector<Integer> r;
      for (const auto& e : row) {
        if (!e.is_number_integer()) throw ConfigError("system.matrix entries must be integers");
        r.emplace_back(e.get<long>());
      }
      m.push_back(std::move(r));
    }
    std::vector<FormalScalar> b;
    for (const auto& e : in.require("translation")) b.push_back(scalar_literal(e, ctx, "system.translation"));
    in.finish();
    try {
      return AffineSystem(std::move(m), std::move(b));
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("system: ") + e.what());
    }
  }
  throw ConfigError("system: unknown kind '" + kind + "' (expected cyclic, skew or affine)");
}

CyclicFunction read_cyclic_function(const json& spec, const CyclicSystem& sys, const Context& ctx) {
  ParamReader in(spec, "function");
  const auto kind = in.require<std::string>("kind");
  CyclicFunction f;
  if (kind == "constant") {
    f.assign(static_cast<std::size_t>(sys.size()), in.has("value") ? complex_number(in.raw("value"), "function.value") : 1.0);
  } else if (kind == "character") {
    f = character(sys, in.require<std::int64_t>("k"));
  } else if (kind == "indicator") {
    f = indicator(sys, in.require<std::vector<std::int64_t>>("points"));
  } else if (kind == "values") {
    for (const auto& v : in.require("values")) f.push_back(complex_number(v, "function.values"));
    if (static_cast<std::int64_t>(f.size()) != sys.size())
      throw ConfigError("function.values: expected " + std::to_string(sys.size()) + " values");
  } else if (kind == "random_unimodular" || kind == "random_bounded") {
    SplitMix64 rng(in.get<std::uint64_t>("seed", ctx.seed));
    f = kind == "random_unimodular" ? random_unimodular(sys.size(), rng) : random_bounded(sys.size(), rng);
    if (in.get<bool>("mean_zero", false)) {
      const Complex mean = integral(sys, f);
      for (auto& v : f) v -= mean;
    }
  } else {
    throw ConfigError("function: unknown kind '" + kind + "' for a cyclic system");
  }
  in.finish();
  return f;
}

TrigPolynomial read_trig_function(const json& spec, const AffineSystem& sys, const Context& ctx) {
  ParamReader in(spec, "function");
  const auto kind = in.require<std::string>("kind");
  const std::size_t d = sys.dimension();
  auto frequency = [&](const json& v) {
    if (!v.is_array() || v.size() != d) throw ConfigError("function: frequencies need " + std::to_string(d) + " integers");
    Frequency k;
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError("function: frequencies must be integers");
      k.emplace_back(e.get<long>());
    }
    return k;
  };
  auto term = [&](ParamReader& t) {
    ExactComplex c = t.has("amplitude") ? exact_amplitude(t.raw("amplitude"), "function.amplitude") : ExactComplex(1);
    if (t.has("phase")) c = c * ExactComplex::exp(scalar_literal(t.raw("phase"), ctx, "function.phase"));
    return c;
  };
  TrigPolynomial f(d);
  if (kind == "constant") {
    f = TrigPolynomial::constant(d, in.has("value") ? exact_amplitude(in.raw("value"), "function.value") : ExactComplex(1));
  } else if (kind == "character") {
    f.add_term(frequency(in.require("frequency")), term(in));
  } else if (kind == "trig") {
    for (const auto& t : in.require("terms")) {
      ParamReader tr(t, "function.terms");
      f.add_term(frequency(tr.require("frequency")), term(tr));
      tr.finish();
    }
  } else {
    throw ConfigError("function: unknown kind '" + kind + "' for an affine system");
  }
  in.finish();
  return f;
}

IntegerSequence read_sequence(const json& spec) {
  ParamReader in(spec, "sequence");
  const auto kind = in.require<std::string>("kind");
  auto window = [&](const char* key, const char* fallback) {
    return in.has(key) ? rational_literal(in.raw(key), std::string("sequence.") + key) : parse_rational(fallback);
  };
  IntegerSequence out = IntegerSequence::polynomial({0, 1});
  if (kind == "polynomial") {
    out = IntegerSequence::polynomial(in.require<std::vector<std::int64_t>>("coeffs"));
  } else if (kind == "floor_power") {
    out = IntegerSequence::floor_power(real_literal(in.require("c"), "sequence.c"));
  } else if (kind == "indicator") {
    IntegerSequence base = read_sequence(in.require("base"));
    auto phase = in.require<std::vector<std::int64_t>>("phase_coeffs");
    auto alpha = real_literal(in.require("alpha"), "sequence.alpha");
    out = IntegerSequence::indicator(base, std::move(phase), alpha, window("u", "0"), window("v", "1/3"));
  } else if (kind == "enumeration") {
    const auto ell = in.require<unsigned>("ell");
    auto alpha = real_literal(in.require("alpha"), "sequence.alpha");
    const auto lo = window("u", "1/4"), hi = window("v", "3/4");
    out = IntegerSequence::enumeration(ell, alpha, lo, hi, in.get<std::int64_t>("scan_bound", kEnumerationScanBound));
  } else if (kind == "table") {
    if (in.has("path"))
      out = IntegerSequence::table_from_file(in.get<std::string>("path", ""));
    else
      out = IntegerSequence::table(in.require<std::vector<std::int64_t>>("values"));
  } else {
    throw ConfigError("sequence: unknown kind '" + kind + "'");
  }
  in.finish();
  return out;
}

unsigned read_degree(ParamReader& in, const char* key, unsigned lo) {
  const auto s = in.require<unsigned>(key);
  if (s > kMaxDegree) throw ConfigError(std::string(key) + " = " + std::to_string(s) + " exceeds the limit " + std::to_string(kMaxDegree));
  if (s < lo) throw ConfigError(std::string(key) + " must be at least " + std::to_string(lo));
  return s;
}

std::int64_t read_positive(ParamReader& in, const char* key) {
  const auto v = in.require<std::int64_t>(key);
  if (v < 1) throw ConfigError(std::string(key) + " must be positive");
  return v;
}

// A finite-box power need not be real (only its limit is), so truncated
// values report the root of its modulus.
double truncated_root(Complex power, unsigned s) { return std::pow(std::abs(power), 1.0 / std::ldexp(1.0, static_cast<int>(s))); }

json cyclic_json(const CyclicFunction& f) {
  json out = json::array();
  for (const auto& v : f) out.push_back({v.real(), v.imag()});
  return out;
}

// --- commands ------------------------------------------------------------

ResultRow make_row(const std::string& run_id, const std::string& command, json params) {
  ResultRow r;
  r.run_id = run_id;
  r.command = command;
  r.params = std::move(params);
  return r;
}

void run_seminorm(ParamReader& in, const Context& ctx, ResultRow& row) {
  const System sys = read_system(in.require("system"), ctx);
  const unsigned s = read_degree(in, "s", 0);
  if (const auto* c = std::get_if<CyclicSystem>(&sys)) {
    const auto d = in.get<std::int64_t>("d", 1);
    if (d < 1) throw ConfigError("d must be positive");
    const CyclicSystem power = c->power(d);
    const auto f = read_cyclic_function(in.require("function"), *c, ctx);
    const auto mode = parse_seminorm_mode(in.get<std::string>("mode", "cyclic-exact"));
    double value = 0.0;
    if (in.get<bool>("fft", false)) {
      if (s != 2 || mode != SeminormMode::CyclicExact) throw ConfigError("fft requires s = 2 and mode cyclic-exact");
      value = u2_via_fft(power, f);
    } else if (mode == SeminormMode::CyclicExact) {
      const Complex p = seminorm_power(power, f, s);
      value = seminorm_root(p, s);
      row.detail["power"] = {p.real(), p.imag()};
    } else if (mode == SeminormMode::Truncated) {
      const Complex p = seminorm_power_truncated(power, f, s, read_positive(in, "H"));
      value = truncated_root(p, s);
      row.detail["power"] = {p.real(), p.imag()};
    } else {
      throw ConfigError("mode symbolic needs an affine system");
    }
    row.value = value;
    row.norm = value;
    return;
  }
  const auto& a = std::get<AffineSystem>(sys);
  const auto f = read_trig_function(in.require("function"), a, ctx);
  const auto mode = parse_seminorm_mode(in.get<std::string>("mode", "symbolic"));
  if (mode == SeminormMode::Symbolic) {
    const auto r = gowers_seminorm_symbolic(a, f, s, ctx.symbols);
    row.value = r.value;
    row.norm = r.value;
    row.detail["power"] = r.power.to_string();
    row.detail["exact_zero"] = r.exact_zero;
  } else if (mode == SeminormMode::Truncated) {
    const NumericAffine num(a, ctx.symbols);
    const Complex p = seminorm_power_truncated(num, NumTrig::from_exact(f, ctx.symbols), s, read_positive(in, "H"));
    row.value = truncated_root(p, s);
    row.norm = row.value->real();
    row.detail["power"] = {p.real(), p.imag()};
  } else {
    throw ConfigError("mode cyclic-exact needs a cyclic system");
  }
}

void run_dual(ParamReader& in, const Context& ctx, ResultRow& row) {
  const System sys = read_system(in.require("system"), ctx);
  const unsigned s = read_degree(in, "s", 1);
  if (const auto* c = std::get_if<CyclicSystem>(&sys)) {
    const auto f = read_cyclic_function(in.require("function"), *c, ctx);
    const auto mode = parse_seminorm_mode(in.get<std::string>("mode", "cyclic-exact"));
    CyclicFunction g;
    if (mode == SeminormMode::CyclicExact)
      g = dual_function(*c, f, s);
    else if (mode == SeminormMode::Truncated)
      g = dual_truncated(*c, f, s, read_positive(in, "M"));
    else
      throw ConfigError("mode symbolic needs an affine system");
    row.value = integral(*c, multiply(f, g));
    row.norm = l2_norm(g);
    row.detail["function"] = cyclic_json(g);
    return;
  }
  const auto& a = std::get<AffineSystem>(sys);
  const auto f = read_trig_function(in.require("function"), a, ctx);
  const auto mode = parse_seminorm_mode(in.get<std::string>("mode", "symbolic"));
  if (mode == SeminormMode::Symbolic) {
    const TrigPolynomial g = dual_symbolic(a, f, s);
    row.value = integral(f * g).numeric(ctx.symbols);
    row.norm = std::sqrt(std::max(0.0, l2_distance_squared(g, TrigPolynomial(a.dimension())).numeric(ctx.symbols).real()));
    row.detail["function"] = g.to_string();
    row.detail["integral"] = integral(f * g).to_string();
  } else if (mode == SeminormMode::Truncated) {
    const NumericAffine num(a, ctx.symbols);
    const NumTrig nf = NumTrig::from_exact(f, ctx.symbols);
    const NumTrig g = dual_truncated(num, nf, s, read_positive(in, "M"));
    row.value = (nf * g).integral();
    row.norm = g.l2_norm();
  } else {
    throw ConfigError("mode cyclic-exact needs a cyclic system");
  }
}

void run_average(ParamReader& in, const Context& ctx, ResultRow& row) {
  const System sys = read_system(in.require("system"), ctx);
  const json& fspecs = in.require("functions");
  const json& sspecs = in.require("sequences");
  if (!fspecs.is_array() || !sspecs.is_array() || fspecs.size() != sspecs.size() || fspecs.empty())
    throw ConfigError("functions and sequences must be non-empty arrays of equal length");
  AverageSpec spec;
  for (const auto& s : sspecs) spec.sequences.push_back(read_sequence(s));
  const auto mode = in.get<std::string>("mode", "truncated");
  if (mode != "truncated" && mode != "symbolic") throw ConfigError("average: mode must be truncated or symbolic");
  if (mode == "truncated") {
    spec.N = read_positive(in, "N");
    if (in.has("weights")) {
      for (const auto& w : in.raw("weights")) spec.weights.push_back(complex_number(w, "weights"));
      if (static_cast<std::int64_t>(spec.weights.size()) != spec.N) throw ConfigError("weights: expected N values");
      for (const auto& w : spec.weights) spec.weight_bound = std::max(spec.weight_bound, std::abs(w));
    }
  }
  if (const auto* c = std::get_if<CyclicSystem>(&sys)) {
    if (mode == "symbolic") throw ConfigError("mode symbolic needs an affine system");
    std::vector<CyclicFunction> fs;
    for (const auto& f : fspecs) fs.push_back(read_cyclic_function(f, *c, ctx));
    const auto r = multiple_average(*c, fs, spec);
    row.value = integral(*c, r.function);
    row.norm = r.l2_norm;
    row.detail["function"] = cyclic_json(r.function);
    return;
  }
  const auto& a = std::get<AffineSystem>(sys);
  std::vector<TrigPolynomial> fs;
  for (const auto& f : fspecs) fs.push_back(read_trig_function(f, a, ctx));
  if (mode == "symbolic") {
    const TrigPolynomial g = multiple_average_symbolic(a, spec.sequences, fs);
    row.value = integral(g).numeric(ctx.symbols);
    row.norm = std::sqrt(std::max(0.0, l2_distance_squared(g, TrigPolynomial(a.dimension())).numeric(ctx.symbols).real()));
    row.detail["function"] = g.to_string();
    return;
  }
  const NumericAffine num(a, ctx.symbols);
  std::vector<NumTrig> nfs;
  for (const auto& f : fs) nfs.push_back(NumTrig::from_exact(f, ctx.symbols));
  const auto r = multiple_average(num, nfs, spec);
  row.value = r.function.integral();
  row.norm = r.l2_norm;
}

void run_equidist(ParamReader& in, const Context& ctx, ResultRow& row) {
  const IntegerSequence seq = read_sequence(in.require("sequence"));
  const auto test = in.get<std::string>("test", "distribution");
  if (test == "weyl_sum" && in.get<bool>("exact", false)) {
    const ExactComplex limit = weyl_sum_limit(seq, scalar_literal(in.require("t"), ctx, "t"));
    row.value = limit.numeric(ctx.symbols);
    row.norm = std::abs(*row.value);
    row.detail["limit"] = limit.to_string();
    return;
  }
  const auto N = read_positive(in, "N");
  if (test == "distribution") {
    const auto power = in.get<unsigned>("power", 1);
    const auto bins = in.get<unsigned>("bins", 10);
    if (bins < 1) throw ConfigError("bins must be positive");
    const auto d = empirical_distribution(seq, real_literal(in.require("t"), "t"), power, N, bins);
    row.value = d.star_discrepancy;
    row.norm = d.star_discrepancy;
    row.detail["frequencies"] = d.frequencies;
  } else if (test == "weyl_sum") {
    row.value = weyl_sum(seq, real_literal(in.require("t"), "t"), N);
    row.norm = std::abs(*row.value);
  } else if (test == "divisibility") {
    const auto r = in.require<std::int64_t>("r");
    if (r < 1) throw ConfigError("r must be positive");
    row.value = divisibility_density(seq, r, N);
    row.norm = row.value->real();
  } else if (test == "bohr") {
    std::vector<NumericReal> alphas;
    for (const auto& a : in.require("alphas")) alphas.push_back(real_literal(a, "alphas"));
    const auto eps = in.require<double>("eps");
    if (!(eps > 0)) throw ConfigError("eps must be positive");
    row.value = bohr_recurrence_density(seq, alphas, eps, N);
    row.norm = row.value->real();
  } else {
    throw ConfigError("equidist: unknown test '" + test + "'");
  }
}

std::optional<Complex> numeric_value(const json& v) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_boolean()) return Complex(v.get<bool>() ? 1.0 : 0.0, 0.0);
  if (v.is_string() && v.get<std::string>() == "0") return Complex(0.0, 0.0);
  return std::nullopt;
}

void run_scenario_command(ParamReader& in, const Context& ctx, RunOutput& out) {
  const auto id = in.require<std::string>("scenario");
  json params = in.has("params") ? in.raw("params") : json::object();
  if (!params.is_object()) throw ConfigError("params must be an object");
  if (in.has("seed") && scenario_is_seeded(id)) params["seed"] = ctx.seed;
  std::optional<ExpectedTable> custom;
  if (in.has("expected_values")) custom = ExpectedTable::load(in.get<std::string>("expected_values", ""));
  in.finish();
  ScenarioReport r = run_scenario(id, params, custom ? *custom : ExpectedTable::builtin(), ctx.symbols);
  for (const auto& c : r.checks) {
    ResultRow row = make_row(out.run_id, "scenario", {{"scenario", id}, {"check", c.name}});
    row.value = numeric_value(c.computed);
    if (row.value) row.norm = std::abs(*row.value);
    row.provenance = c.provenance;
    row.verdict = to_string(c.verdict);
    row.detail["computed"] = c.computed;
    out.rows.push_back(std::move(row));
  }
  out.passed = r.passed();
  out.reports.push_back(std::move(r));
}

void run_table(ParamReader& in, RunOutput& out) {
  std::optional<ExpectedTable> custom;
  if (in.has("path")) custom = ExpectedTable::load(in.get<std::string>("path", ""));
  in.finish();
  const ExpectedTable& t = custom ? *custom : ExpectedTable::builtin();
  for (const auto& [key, e] : t.entries()) {
    ResultRow row = make_row(out.run_id, "table", {{"key", key}, {"comparison", e.comparison}, {"tolerance", e.tolerance}});
    if (!e.oracle_command.empty()) row.params["oracle_command"] = e.oracle_command;
    row.value = numeric_value(e.value);
    if (row.value) row.norm = std::abs(*row.value);
    row.provenance = to_string(e.provenance);
    row.detail["value"] = e.value;
    out.rows.push_back(std::move(row));
  }
}

// --- rendering -------------------------------------------------------------

std::string number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json rounded(json v) {
  if (v.is_number_float()) {
    const double d = v.get<double>();
    return std::isfinite(d) ? json(std::stod(number(d))) : json(nullptr);
  }
  if (v.is_structured())
    for (auto& e : v) e = rounded(std::move(e));
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class ThreadScope {
 public:
  explicit ThreadScope(std::optional<unsigned> n) : previous_(parallel::thread_override()), active_(n.has_value()) {
    if (active_) parallel::set_thread_count(*n);
  }
  ~ThreadScope() {
    if (active_) parallel::set_thread_count(previous_);
  }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  unsigned previous_;
  bool active_;
};

}  // namespace

ReportFormat parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

json apply_overrides(json config, const std::vector<std::string>& sets) {
  for (const auto& set : sets) {
    const auto eq = set.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + set + "'");
    const std::string path = set.substr(0, eq), text = set.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    json* node = &config;
    json* parent = nullptr;
    std::string leaf;
    std::size_t start = 0;
    while (true) {
      const auto dot = path.find('.', start);
      const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (key.empty()) throw ConfigError("--set: empty key segment in '" + path + "'");
      if (node->is_null()) *node = json::object();
      if (!node->is_object()) throw ConfigError("--set: '" + path + "' descends into a non-object");
      parent = node;
      leaf = key;
      node = &(*node)[key];
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    if (value.is_null())
      parent->erase(leaf);
    else
      *node = std::move(value);
  }
  return config;
}

RunOutput run_config(const json& config) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  ParamReader in(config, "config");
  RunOutput out;
  out.command = in.require<std::string>("command");
  out.run_id = in.get<std::string>("run_id", "run");
  if (in.has("output")) in.raw("output");  // consumed by resolve_output

  std::optional<unsigned> threads;
  if (in.has("threads")) {
    threads = in.get<unsigned>("threads", 1);
    if (*threads < 1 || *threads > 1024) throw ConfigError("threads must lie in [1, 1024]");
  }
  ThreadScope scope(threads);

  Context ctx;
  ctx.seed = in.get<std::uint64_t>("seed", 1);
  if (in.has("symbols")) {
    const json& syms = in.raw("symbols");
    if (!syms.is_object()) throw ConfigError("symbols must map names to real literals");
    for (const auto& [name, v] : syms.items()) ctx.symbols.set(name, real_literal(v, "symbols." + name));
  }

  json params = config;
  for (const char* k : {"output", "run_id", "command", "threads"}) params.erase(k);
  ResultRow row = make_row(out.run_id, out.command, params);

  if (out.command == "scenario") {
    run_scenario_command(in, ctx, out);
    return out;
  }
  if (out.command == "table") {
    run_table(in, out);
    return out;
  }
  if (out.command == "seminorm")
    run_seminorm(in, ctx, row);
  else if (out.command == "dual")
    run_dual(in, ctx, row);
  else if (out.command == "average")
    run_average(in, ctx, row);
  else if (out.command == "equidist")
    run_equidist(in, ctx, row);
  else
    throw ConfigError("unknown command '" + out.command + "'");
  in.finish();
  out.rows.push_back(std::move(row));
  return out;
}

OutputTarget resolve_output(const json& config, const std::string& out_path, const std::string& format) {
  OutputTarget t;
  std::string fmt = format;
  if (config.is_object() && config.contains("output")) {
    ParamReader o(config["output"], "output");
    t.path = o.get<std::string>("path", "");
    if (fmt.empty()) fmt = o.get<std::string>("format", "");
    o.finish();
  }
  if (!out_path.empty()) t.path = out_path;
  if (fmt.empty()) fmt = std::filesystem::path(t.path).extension() == ".json" ? "json" : "csv";
  t.format = parse_report_format(fmt);
  return t;
}

std::string render_report(const RunOutput& out, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream os;
    os << "run_id,command,param_json,value_re,value_im,norm,provenance,verdict\n";
    for (const auto& r : out.rows) {
      os << csv_field(r.run_id) << ',' << csv_field(r.command) << ',' << csv_field(rounded(r.params).dump()) << ',';
      if (r.value) os << number(r.value->real()) << ',' << number(r.value->imag());
      else os << ',';
      os << ',' << (r.norm ? number(*r.norm) : "") << ',' << csv_field(r.provenance) << ',' << r.verdict << '\n';
    }
    return os.str();
  }
  json rows = json::array();
  for (const auto& r : out.rows) {
    json j{{"run_id", r.run_id}, {"command", r.command}, {"params", r.params}, {"provenance", r.provenance},
           {"verdict", r.verdict}};
    j["value"] = r.value ? json{r.value->real(), r.value->imag()} : json(nullptr);
    j["norm"] = r.norm ? json(*r.norm) : json(nullptr);
    if (!r.detail.is_null()) j["detail"] = r.detail;
    rows.push_back(std::move(j));
  }
  json reports = json::array();
  for (const auto& r : out.reports) reports.push_back(to_json(r));
  json doc{{"run_id", out.run_id},
           {"command", out.command},
           {"verdict", out.passed ? "pass" : "fail"},
           {"rows", std::move(rows)},
           {"reports", std::move(reports)}};
  return rounded(std::move(doc)).dump(1) + "\n";
}

void write_file_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + tmp.string() + "' for writing");
    os << text;
    os.flush();
    if (!os) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move report into place at '" + path + "'");
  }
}

int exit_code(const RunOutput& out) { return out.passed ? 0 : 1; }

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Resource: return 3;
    case ErrorKind::Inconsistency: return 1;
    default: return 2;
  }
}

}  // namespace ghk

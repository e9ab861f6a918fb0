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
#include "ghk/ghk.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <fstream>
#include <sstream>
#include <string>

#include "ghk/calculus.hpp"
#include "ghk/errors.hpp"
#include "ghk/parallel.hpp"
#include "ghk/runner.hpp"
#include "ghk/scenarios.hpp"

struct ghk_run {
  nlohmann::json config;
  ghk::RunOutput output;
};

struct ghk_cyclic {
  ghk::CyclicSystem system;
};

namespace {

thread_local std::string t_last_error;

ghk_status status_for(ghk::ErrorKind kind) {
  switch (kind) {
    case ghk::ErrorKind::InvalidArgument: return GHK_ERR_INVALID_ARGUMENT;
    case ghk::ErrorKind::Precondition: return GHK_ERR_PRECONDITION;
    case ghk::ErrorKind::Unsupported: return GHK_ERR_UNSUPPORTED;
    case ghk::ErrorKind::Resource: return GHK_ERR_RESOURCE;
    case ghk::ErrorKind::Inconsistency: return GHK_ERR_INCONSISTENCY;
    case ghk::ErrorKind::Config: return GHK_ERR_CONFIG;
    case ghk::ErrorKind::Io: return GHK_ERR_IO;
  }
  return GHK_ERR_INTERNAL;
}

template <class F>
ghk_status guarded(F&& body) {
  t_last_error.clear();
  try {
    return body();
  } catch (const ghk::Error& e) {
    t_last_error = e.what();
    return status_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    t_last_error = e.what();
    return GHK_ERR_CONFIG;
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return GHK_ERR_RESOURCE;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return GHK_ERR_INTERNAL;
  }
}

ghk_status missing(const char* what) {
  t_last_error = std::string(what) + " is null";
  return GHK_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ghk::CyclicFunction unpack(const ghk_cyclic* sys, const double* values, size_t count) {
  if (static_cast<std::int64_t>(count) != sys->system.size())
    throw ghk::InvalidArgument("expected " + std::to_string(sys->system.size()) + " values, got " +
                               std::to_string(count));
  ghk::CyclicFunction f(count);
  for (size_t i = 0; i < count; ++i) f[i] = {values[2 * i], values[2 * i + 1]};
  return f;
}

ghk_status run_parsed(nlohmann::json config, const char* const* sets, size_t n_sets, const uint64_t* seed,
                      ghk_run** out) {
  std::vector<std::string> overrides;
  for (size_t i = 0; i < n_sets; ++i) {
    if (!sets[i]) return missing("override");
    overrides.emplace_back(sets[i]);
  }
  config = ghk::apply_overrides(std::move(config), overrides);
  if (seed) config["seed"] = *seed;
  auto run = std::make_unique<ghk_run>();
  run->output = ghk::run_config(config);
  run->config = std::move(config);
  const bool passed = run->output.passed;
  *out = run.release();
  return passed ? GHK_OK : GHK_VERDICT_FAILED;
}

nlohmann::json parse_config(const std::string& text, const std::string& origin) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ghk::ConfigError(origin + ": not valid JSON");
  return j;
}

}  // namespace

extern "C" {

const char* ghk_version(void) { return "1.0.0"; }

const char* ghk_last_error(void) { return t_last_error.c_str(); }

const char* ghk_status_name(ghk_status status) {
  switch (status) {
    case GHK_OK: return "ok";
    case GHK_VERDICT_FAILED: return "verdict failed";
    case GHK_ERR_CONFIG: return "configuration error";
    case GHK_ERR_RESOURCE: return "resource cap exceeded";
    case GHK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GHK_ERR_PRECONDITION: return "precondition violated";
    case GHK_ERR_UNSUPPORTED: return "unsupported";
    case GHK_ERR_INCONSISTENCY: return "internal inconsistency";
    case GHK_ERR_IO: return "I/O error";
    case GHK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int ghk_status_exit_code(ghk_status status) {
  switch (status) {
    case GHK_OK: return 0;
    case GHK_VERDICT_FAILED:
    case GHK_ERR_INCONSISTENCY:
    case GHK_ERR_INTERNAL: return 1;
    case GHK_ERR_RESOURCE: return 3;
    default: return 2;
  }
}

void ghk_string_free(char* s) { std::free(s); }

void ghk_set_threads(unsigned n) { ghk::parallel::set_thread_count(n); }

ghk_status ghk_run_config(const char* config_json, const char* const* sets, size_t n_sets, const uint64_t* seed,
                          ghk_run** out) {
  if (!out) return missing("out");
  *out = nullptr;
  if (!config_json) return missing("config_json");
  return guarded([&] { return run_parsed(parse_config(config_json, "config"), sets, n_sets, seed, out); });
}

ghk_status ghk_run_config_file(const char* path, const char* const* sets, size_t n_sets, const uint64_t* seed,
                               ghk_run** out) {
  if (!out) return missing("out");
  *out = nullptr;
  if (!path) return missing("path");
  return guarded([&] {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ghk::ConfigError(std::string("cannot read config '") + path + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return run_parsed(parse_config(os.str(), path), sets, n_sets, seed, out);
  });
}

void ghk_run_free(ghk_run* run) { delete run; }

int ghk_run_passed(const ghk_run* run) { return run && run->output.passed ? 1 : 0; }

size_t ghk_run_row_count(const ghk_run* run) { return run ? run->output.rows.size() : 0; }

ghk_status ghk_run_output_target(const ghk_run* run, const char* out_path, const char* format, char** path,
                                 char** resolved_format) {
  if (!run) return missing("run");
  if (!path || !resolved_format) return missing("out");
  return guarded([&] {
    const auto t = ghk::resolve_output(run->config, out_path ? out_path : "", format ? format : "");
    *path = copy_string(t.path);
    *resolved_format = copy_string(t.format == ghk::ReportFormat::Json ? "json" : "csv");
    return GHK_OK;
  });
}

ghk_status ghk_run_render(const ghk_run* run, const char* format, char** text) {
  if (!run) return missing("run");
  if (!format) return missing("format");
  if (!text) return missing("text");
  return guarded([&] {
    *text = copy_string(ghk::render_report(run->output, ghk::parse_report_format(format)));
    return GHK_OK;
  });
}

ghk_status ghk_run_write(const ghk_run* run, const char* path, const char* format) {
  if (!run) return missing("run");
  if (!path) return missing("path");
  if (!format) return missing("format");
  return guarded([&] {
    ghk::write_file_atomically(path, ghk::render_report(run->output, ghk::parse_report_format(format)));
    return GHK_OK;
  });
}

ghk_status ghk_scenario_names(char** json) {
  if (!json) return missing("json");
  return guarded([&] {
    *json = copy_string(nlohmann::json(ghk::scenario_names()).dump());
    return GHK_OK;
  });
}

ghk_status ghk_cyclic_new(int64_t modulus, int64_t step, ghk_cyclic** out) {
  if (!out) return missing("out");
  *out = nullptr;
  return guarded([&] {
    if (modulus < 1) throw ghk::InvalidArgument("modulus must be positive");
    *out = new ghk_cyclic{ghk::CyclicSystem(modulus, step)};
    return GHK_OK;
  });
}

void ghk_cyclic_free(ghk_cyclic* sys) { delete sys; }

ghk_status ghk_cyclic_seminorm(const ghk_cyclic* sys, const double* values, size_t count, unsigned s, double* out) {
  if (!sys) return missing("sys");
  if (!values || !out) return missing("buffer");
  return guarded([&] {
    if (s > ghk::kMaxDegree) throw ghk::ConfigError("degree exceeds the limit " + std::to_string(ghk::kMaxDegree));
    *out = ghk::seminorm_root(ghk::seminorm_power(sys->system, unpack(sys, values, count), s), s);
    return GHK_OK;
  });
}

ghk_status ghk_cyclic_u2_fft(const ghk_cyclic* sys, const double* values, size_t count, double* out) {
  if (!sys) return missing("sys");
  if (!values || !out) return missing("buffer");
  return guarded([&] {
    *out = ghk::u2_via_fft(sys->system, unpack(sys, values, count));
    return GHK_OK;
  });
}

ghk_status ghk_cyclic_dual(const ghk_cyclic* sys, const double* values, size_t count, unsigned s, double* dual) {
  if (!sys) return missing("sys");
  if (!values || !dual) return missing("buffer");
  return guarded([&] {
    if (s < 1 || s > ghk::kMaxDegree) throw ghk::ConfigError("degree must lie in [1, " + std::to_string(ghk::kMaxDegree) + "]");
    const auto g = ghk::dual_function(sys->system, unpack(sys, values, count), s);
    for (size_t i = 0; i < count; ++i) {
      dual[2 * i] = g[i].real();
      dual[2 * i + 1] = g[i].imag();
    }
    return GHK_OK;
  });
}

}  // extern "C"

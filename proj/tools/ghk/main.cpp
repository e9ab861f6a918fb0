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
// ghk: batch front end over the C API.
//
//   ghk run <config.json> [--set k=v]... [--out path] [--format csv|json] [--seed u64]
//   ghk scenarios

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghk/ghk.h"

namespace {

int fail(ghk_status status, const std::string& context) {
  std::cerr << "ghk: " << context << ": " << ghk_status_name(status) << ": " << ghk_last_error() << "\n";
  return ghk_status_exit_code(status);
}

struct Owned {
  char* p = nullptr;
  ~Owned() { ghk_string_free(p); }
};

int run(const std::string& config, const std::vector<std::string>& sets, const std::string& out,
        const std::string& format, std::optional<std::uint64_t> seed) {
  std::vector<const char*> argv;
  for (const auto& s : sets) argv.push_back(s.c_str());
  ghk_run* handle = nullptr;
  const ghk_status status =
      ghk_run_config_file(config.c_str(), argv.data(), argv.size(), seed ? &*seed : nullptr, &handle);
  if (!handle) return fail(status, config);

  int code = ghk_status_exit_code(status);
  Owned path, fmt;
  ghk_status s = ghk_run_output_target(handle, out.empty() ? nullptr : out.c_str(),
                                       format.empty() ? nullptr : format.c_str(), &path.p, &fmt.p);
  if (s == GHK_OK) {
    if (*path.p) {
      s = ghk_run_write(handle, path.p, fmt.p);
    } else {
      Owned text;
      s = ghk_run_render(handle, fmt.p, &text.p);
      if (s == GHK_OK) std::fwrite(text.p, 1, std::char_traits<char>::length(text.p), stdout);
    }
  }
  if (s != GHK_OK) code = fail(s, "writing report");
  else if (status == GHK_VERDICT_FAILED) std::cerr << "ghk: " << config << ": some checks failed\n";
  ghk_run_free(handle);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gowers-Host-Kra seminorm laboratory"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "execute a JSON config and emit a report");
  std::string config, out, format;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  run_cmd->add_option("config", config, "config file")->required();
  run_cmd->add_option("--set", sets, "override a config value, dotted key=value")->allow_extra_args(false);
  run_cmd->add_option("--out", out, "report path (default: config output.path, else stdout)");
  run_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--seed", seed, "seed for random inputs and seeded scenarios");

  auto* list_cmd = app.add_subcommand("scenarios", "list scenario ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (list_cmd->parsed()) {
    Owned names;
    if (ghk_status s = ghk_scenario_names(&names.p); s != GHK_OK) return fail(s, "scenarios");
    std::cout << names.p << "\n";
    return 0;
  }
  return run(config, sets, out, format, seed);
}

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
#pragma once

// Batch runs from a JSON config: validation, dispatch and report rendering.
//
// A config names one command (seminorm, dual, average, equidist, scenario,
// table) plus the inputs that command reads. Every key must be consumed by
// the command; anything left over is a ConfigError. docs/config.schema.json
// lists the keys per command.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghk/cyclic.hpp"
#include "ghk/errors.hpp"
#include "ghk/report.hpp"
#include "json.hpp"

namespace ghk {

enum class ReportFormat { Csv, Json };
ReportFormat parse_report_format(const std::string& s);

/// One CSV row. Missing values print as empty fields.
struct ResultRow {
  std::string run_id;
  std::string command;
  nlohmann::json params;
  std::optional<Complex> value;
  std::optional<double> norm;
  std::string provenance;
  std::string verdict = "report";
  nlohmann::json detail;  // JSON output only
};

struct RunOutput {
  std::string run_id;
  std::string command;
  std::vector<ResultRow> rows;
  std::vector<ScenarioReport> reports;
  bool passed = true;
};

/// Applies "a.b.c=value" overrides. The value is parsed as JSON when it
/// parses, and taken as a string otherwise; null removes the key.
/// Intermediate objects are created.
nlohmann::json apply_overrides(nlohmann::json config, const std::vector<std::string>& sets);

/// Executes a config. The "output" block is ignored here; see resolve_output.
/// A "threads" key caps the worker count for the duration of the run.
RunOutput run_config(const nlohmann::json& config);

struct OutputTarget {
  std::string path;  // empty: standard output
  ReportFormat format = ReportFormat::Csv;
};
/// Command-line values win over the config's "output" block; without an
/// explicit format a ".json" path selects JSON.
OutputTarget resolve_output(const nlohmann::json& config, const std::string& out_path, const std::string& format);

/// CSV header plus rows, or the JSON document. Numbers carry 12 significant
/// digits in both formats.
std::string render_report(const RunOutput& out, ReportFormat format);

/// Writes via a temporary file in the same directory and rename(2).
void write_file_atomically(const std::string& path, const std::string& text);

/// 0 pass, 1 failed verdict, 2 config error, 3 resource cap.
int exit_code(const RunOutput& out);
int exit_code(ErrorKind kind);

}  // namespace ghk

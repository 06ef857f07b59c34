// Copyright 2026 The EPSM Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epsm/report.hpp"

namespace epsm {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitInternal = 3 };

struct EvaluateOptions {
  std::vector<std::filesystem::path> inputs;  // files or directories of *.json
  std::optional<std::filesystem::path> params;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> severity_model;
  int jobs = 1;
  bool keep_going = false;
};

struct ScenarioFailure {
  std::string source;
  std::string message;
};

struct EvaluateResult {
  MetricReport report;
  std::vector<ScenarioFailure> failures;
};

// Directories expand to their *.json files in name order.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::filesystem::path>& inputs);

// Loads, applies overrides, re-simulates scenarios that carry a sensor
// section and evaluates. Without keep_going the first failure throws.
EvaluateResult run_evaluate(const EvaluateOptions& opts);

nlohmann::json summary_with_failures(const EvaluateResult& result);

struct SimulateOptions {
  std::filesystem::path input;
  std::optional<std::filesystem::path> sensor;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out;
  bool overwrite = false;
  int jobs = 1;
};

// The written scenario carries the detections and no sensor section, so
// evaluating it uses the detections as they are.
Scenario run_simulate(const SimulateOptions& opts);

struct ReportOptions {
  std::vector<std::filesystem::path> csvs;
  std::optional<std::filesystem::path> plots;
};

AggregateReport run_report(const ReportOptions& opts, std::vector<MetricRow>* rows = nullptr);

struct SynthOptions {
  std::uint64_t seed = 0;
  std::size_t count = 20;
  std::filesystem::path out;
};

std::vector<std::filesystem::path> run_synth(const SynthOptions& opts);

int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

// Runs `body`, mapping library errors to kExitData and anything else to
// kExitInternal, with the message on `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace epsm

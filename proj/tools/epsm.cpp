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

#include <iostream>

#include <CLI11.hpp>

#include "epsm/commands.hpp"

int main(int argc, char** argv) {
  using namespace epsm;
  CLI::App app{"Environment perception safety metrics"};
  app.set_version_flag("--version", EPSM_VERSION);
  app.require_subcommand(1);

  EvaluateOptions ev;
  std::vector<std::string> ev_inputs;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate scenarios and write per-frame and aggregate reports");
  evaluate->add_option("files", ev_inputs, "Scenario files or directories")->required();
  evaluate->add_option("--params", ev.params, "Metric parameter overrides (JSON)");
  evaluate->add_option("--seed", ev.seed, "Sensor seed override");
  evaluate->add_option("--out", ev.out, "Output directory for frames.csv and summary.json");
  evaluate->add_option("--jobs", ev.jobs, "Worker threads (1 runs the serial path)")
      ->check(CLI::PositiveNumber);
  evaluate->add_flag("--keep-going", ev.keep_going, "Record failing scenarios and continue");
  evaluate->add_option("--severity-model", ev.severity_model, "Vehicle injury model (JSON)");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Fill detections with the statistical sensor model");
  simulate->add_option("file", sim.input, "Scenario file")->required();
  simulate->add_option("--sensor", sim.sensor, "Sensor configuration (JSON)");
  simulate->add_option("--seed", sim.seed, "Sensor seed");
  simulate->add_option("--out", sim.out, "Output scenario file")->required();
  simulate->add_flag("--overwrite", sim.overwrite, "Replace existing detections");
  simulate->add_option("--jobs", sim.jobs, "Worker threads")->check(CLI::PositiveNumber);

  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Aggregate per-frame CSV files");
  report->add_option("csvs", rep.csvs, "Per-frame CSV files")->required();
  report->add_option("--plots", rep.plots, "Directory for per-metric series");

  SynthOptions syn;
  auto* synth = app.add_subcommand("synth", "Write a seeded synthetic scenario corpus");
  synth->add_option("--seed", syn.seed, "Corpus seed");
  synth->add_option("--count", syn.count, "Number of scenarios");
  synth->add_option("--out", syn.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (*evaluate) {
    ev.inputs.assign(ev_inputs.begin(), ev_inputs.end());
    return cmd_evaluate(ev, std::cout, std::cerr);
  }
  if (*simulate) return cmd_simulate(sim, std::cout, std::cerr);
  if (*report) return cmd_report(rep, std::cout, std::cerr);
  return cmd_synth(syn, std::cout, std::cerr);
}

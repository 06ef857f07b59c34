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

#include "epsm/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "epsm/errors.hpp"
#include "epsm/sensor_sim.hpp"
#include "epsm/synthetic.hpp"

namespace epsm {

namespace fs = std::filesystem;

std::vector<fs::path> expand_inputs(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(in);
    }
  }
  return out;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

Scenario prepare(const fs::path& path, const std::optional<nlohmann::json>& params,
                 const std::optional<std::uint64_t>& seed, int jobs) {
  Scenario s = load_scenario(path);
  if (params) {
    try {
      s.params = params_from_json(*params, s.params);
    } catch (const ParseError& e) {
      throw ParseError("params" + (e.locus().empty() ? "" : ": " + e.locus()), e.message());
    }
    auto violations = validate(s);
    if (!violations.empty()) {
      std::string msg = path.string() + ": invalid after params override";
      for (const auto& v : violations) msg += "\n  " + to_string(v);
      throw ValidationError(msg);
    }
  }
  if (s.sensor) {
    SensorConfig cfg = *s.sensor;
    if (seed) cfg.seed = *seed;
    s = simulate_scenario(s, cfg, Execution::parallel(jobs));
  }
  return s;
}

}  // namespace

EvaluateResult run_evaluate(const EvaluateOptions& opts) {
  const auto files = expand_inputs(opts.inputs);
  if (files.empty()) throw EmptyInputError("no scenario files given");
  std::optional<nlohmann::json> params;
  if (opts.params) params = read_json_file(*opts.params);
  const VehicleSeverityModel model =
      load_severity_model(opts.severity_model.value_or(default_severity_model_path()));

  EvaluateResult result;
  std::vector<Scenario> scenarios;
  for (const auto& f : files) {
    try {
      scenarios.push_back(prepare(f, params, opts.seed, opts.jobs));
    } catch (const std::exception& e) {
      if (!opts.keep_going) throw;
      result.failures.push_back({f.string(), e.what()});
    }
  }

  // Hash of every effective parameter set, in input order.
  std::string fingerprint;
  for (const auto& s : scenarios) {
    fingerprint += s.id + ":" + params_to_json(s.params).dump() + ";";
  }

  const auto evals = evaluate_corpus(scenarios, model, Execution::parallel(opts.jobs));
  result.report = build_report(evals, RunMeta{opts.seed, hex64(fnv1a64(fingerprint))});

  if (opts.out) {
    fs::create_directories(*opts.out);
    std::ofstream csv(*opts.out / "frames.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + (*opts.out / "frames.csv").string());
    write_csv(csv, result.report.per_frame);
    write_text(*opts.out / "summary.json", summary_with_failures(result).dump(2) + "\n");
  }
  return result;
}

nlohmann::json summary_with_failures(const EvaluateResult& result) {
  auto j = summary_json(result.report);
  auto failures = nlohmann::json::array();
  for (const auto& f : result.failures) {
    failures.push_back({{"source", f.source}, {"error", f.message}});
  }
  j["failures"] = failures;
  return j;
}

Scenario run_simulate(const SimulateOptions& opts) {
  Scenario s = load_scenario(opts.input);
  SensorConfig cfg = s.sensor.value_or(SensorConfig{});
  if (opts.sensor) cfg = sensor_from_json(read_json_file(*opts.sensor));
  if (opts.seed) cfg.seed = *opts.seed;
  if (!opts.overwrite) {
    for (const auto& f : s.frames) {
      if (!f.detections.boxes.empty() || f.detections.lane) {
        throw ValidationError(opts.input.string() +
                              ": scenario already has detections (use --overwrite)");
      }
    }
  }
  s.sensor.reset();
  Scenario out = simulate_scenario(s, cfg, Execution::parallel(opts.jobs));
  write_text(opts.out, serialize_scenario(out) + "\n");
  return out;
}

AggregateReport run_report(const ReportOptions& opts, std::vector<MetricRow>* rows_out) {
  if (opts.csvs.empty()) throw EmptyInputError("no CSV files given");
  std::vector<MetricRow> rows;
  for (const auto& p : opts.csvs) {
    auto r = read_csv_file(p);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (opts.plots) write_plot_series(*opts.plots, rows);
  auto agg = aggregate(rows);
  if (rows_out) *rows_out = std::move(rows);
  return agg;
}

std::vector<fs::path> run_synth(const SynthOptions& opts) {
  std::vector<fs::path> written;
  for (const auto& s : make_synthetic_corpus(opts.seed, opts.count)) {
    const auto path = opts.out / (s.id + ".json");
    write_text(path, serialize_scenario(s) + "\n");
    written.push_back(path);
  }
  return written;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const SchemaMismatch& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const OffMapError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (...) {
    err << "internal error\n";
    return kExitInternal;
  }
  return kExitData;
}

int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto result = run_evaluate(opts);
        for (const auto& f : result.failures) err << "error: " << f.message << "\n";
        out << format_table(result.report.aggregate);
        if (result.report.map_allpoint) {
          out << "mAP (all-point) " << format6(*result.report.map_allpoint)
              << "  mAP (11-point) " << format6(*result.report.map_11point) << "\n";
        }
        return result.failures.empty() ? kExitOk : kExitData;
      },
      err);
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto s = run_simulate(opts);
        out << "wrote " << opts.out.string() << " (" << s.frames.size() << " frames)\n";
        return kExitOk;
      },
      err);
}

int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        out << format_table(run_report(opts));
        return kExitOk;
      },
      err);
}

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        for (const auto& p : run_synth(opts)) out << p.string() << "\n";
        return kExitOk;
      },
      err);
}

}  // namespace epsm

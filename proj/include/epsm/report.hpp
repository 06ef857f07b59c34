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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "epsm/pipeline.hpp"

namespace epsm {

// One CSV row. Numeric fields hold the 6-decimal values that are written,
// so aggregates computed here match aggregates recomputed from the file.
struct MetricRow {
  std::string scenario_id;
  std::size_t frame = 0;
  double t = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double lane_accuracy = 0.0;
  double moda_cum = 0.0;
  double modp = 0.0;
  double lane_precision = 0.0;
  double lane_recall = 0.0;
  double lane_f1 = 0.0;
  double s_obj = 0.0;
  double s_lane = 0.0;
  double s_p = 0.0;
  std::string tree_case;
  double s_f = 0.0;
  std::string label;

  bool operator==(const MetricRow&) const = default;
};

// Fixed CSV column order.
const std::vector<std::string>& csv_columns();

// Numeric metric columns, in report order, with their table group.
struct MetricColumn {
  std::string name;
  std::string group;  // "Object Detection", "Lane Detection" or "EPSM"
  double MetricRow::*field;
};
const std::vector<MetricColumn>& metric_columns();

double round6(double v);
std::string format6(double v);

std::vector<MetricRow> rows_from_evaluations(std::span<const ScenarioEvaluation> evals);

void write_csv(std::ostream& out, std::span<const MetricRow> rows);
// Throws SchemaMismatch when the header or a row does not fit the schema.
std::vector<MetricRow> read_csv(std::istream& in, const std::string& source = "csv");
std::vector<MetricRow> read_csv_file(const std::filesystem::path& path);

// Population statistics.
struct Stats {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};
Stats compute_stats(std::span<const double> values);

struct MetricStats {
  std::string name;
  std::string group;
  Stats stats;
};

struct ScenarioScore {
  std::string scenario_id;
  double min_s_f = 1.0;
};

struct AggregateReport {
  std::vector<MetricStats> frame_level;  // over all frames
  std::vector<ScenarioScore> scenarios;  // worst-frame S_F per scenario
  Stats scenario_level;                  // over the scenario scores
};

AggregateReport aggregate(std::span<const MetricRow> rows);

struct RunMeta {
  std::optional<std::uint64_t> seed;
  std::string params_hash;
  std::string tool_version = EPSM_VERSION;
};

struct MetricReport {
  std::vector<MetricRow> per_frame;
  AggregateReport aggregate;
  std::vector<ClassAp> average_precision;
  std::optional<double> map_allpoint;
  std::optional<double> map_11point;
  RunMeta run_meta;
};

MetricReport build_report(std::span<const ScenarioEvaluation> evals, RunMeta meta);

nlohmann::json summary_json(const MetricReport& report);

// Aligned mu / sigma / min / max table grouped as Object Detection, Lane
// Detection and EPSM, followed by the scenario-level row.
std::string format_table(const AggregateReport& agg);

// One file per metric: scenario_id,frame,t_s,value.
void write_plot_series(const std::filesystem::path& dir, std::span<const MetricRow> rows);

}  // namespace epsm

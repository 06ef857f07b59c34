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

#include "epsm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "epsm/errors.hpp"

namespace epsm {

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "scenario_id", "frame",     "t_s",       "precision",      "recall",      "f1",
      "accuracy",    "moda_cum",  "modp",      "lane_precision", "lane_recall", "lane_f1",
      "s_obj",       "s_lane",    "s_p",       "tree_case",      "s_f",         "label"};
  return cols;
}

const std::vector<MetricColumn>& metric_columns() {
  static const std::vector<MetricColumn> cols = {
      {"precision", "Object Detection", &MetricRow::precision},
      {"recall", "Object Detection", &MetricRow::recall},
      {"f1", "Object Detection", &MetricRow::f1},
      {"moda_cum", "Object Detection", &MetricRow::moda_cum},
      {"modp", "Object Detection", &MetricRow::modp},
      {"lane_precision", "Lane Detection", &MetricRow::lane_precision},
      {"lane_recall", "Lane Detection", &MetricRow::lane_recall},
      {"lane_f1", "Lane Detection", &MetricRow::lane_f1},
      {"accuracy", "Lane Detection", &MetricRow::lane_accuracy},
      {"s_obj", "EPSM", &MetricRow::s_obj},
      {"s_lane", "EPSM", &MetricRow::s_lane},
      {"s_p", "EPSM", &MetricRow::s_p},
      {"s_f", "EPSM", &MetricRow::s_f},
  };
  return cols;
}

std::string format6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

double round6(double v) { return std::stod(format6(v)); }

std::vector<MetricRow> rows_from_evaluations(std::span<const ScenarioEvaluation> evals) {
  std::vector<MetricRow> rows;
  for (const auto& se : evals) {
    for (std::size_t i = 0; i < se.frames.size(); ++i) {
      const auto& f = se.frames[i];
      MetricRow r;
      r.scenario_id = se.scenario_id;
      r.frame = f.frame_index;
      r.t = round6(f.t);
      r.precision = round6(f.object_scores.precision.value);
      r.recall = round6(f.object_scores.recall.value);
      r.f1 = round6(f.object_scores.f1.value);
      r.lane_accuracy = round6(f.lane_scores.accuracy.value);
      r.moda_cum = round6(se.moda_cumulative.at(i).value);
      r.modp = round6(f.modp.value);
      r.lane_precision = round6(f.lane_scores.precision.value);
      r.lane_recall = round6(f.lane_scores.recall.value);
      r.lane_f1 = round6(f.lane_scores.f1.value);
      r.s_obj = round6(f.safety.s_obj);
      r.s_lane = round6(f.safety.s_lane);
      r.s_p = round6(f.safety.s_p);
      r.tree_case = std::string(to_string(f.safety.tree_case));
      r.s_f = round6(f.safety.s_f);
      r.label = std::string(to_string(f.safety.label));
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const MetricRow> rows) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : rows) {
    out << csv_field(r.scenario_id) << ',' << r.frame << ',' << format6(r.t) << ','
        << format6(r.precision) << ',' << format6(r.recall) << ',' << format6(r.f1) << ','
        << format6(r.lane_accuracy) << ',' << format6(r.moda_cum) << ',' << format6(r.modp) << ','
        << format6(r.lane_precision) << ',' << format6(r.lane_recall) << ','
        << format6(r.lane_f1) << ',' << format6(r.s_obj) << ',' << format6(r.s_lane) << ','
        << format6(r.s_p) << ',' << r.tree_case << ',' << format6(r.s_f) << ','
        << csv_field(r.label) << "\n";
  }
}

std::vector<MetricRow> read_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaMismatch(source + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (split_csv_line(line) != csv_columns()) {
    throw SchemaMismatch(source + ": header does not match the per-frame schema");
  }
  std::vector<MetricRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    const std::string where = source + ": line " + std::to_string(lineno);
    if (f.size() != csv_columns().size()) throw SchemaMismatch(where + ": wrong field count");
    auto num = [&](std::size_t i) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(f[i], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != f[i].size() || f[i].empty()) {
        throw SchemaMismatch(where + ": column '" + csv_columns()[i] + "' is not a number");
      }
      return v;
    };
    MetricRow r;
    r.scenario_id = f[0];
    r.frame = static_cast<std::size_t>(num(1));
    r.t = num(2);
    r.precision = num(3);
    r.recall = num(4);
    r.f1 = num(5);
    r.lane_accuracy = num(6);
    r.moda_cum = num(7);
    r.modp = num(8);
    r.lane_precision = num(9);
    r.lane_recall = num(10);
    r.lane_f1 = num(11);
    r.s_obj = num(12);
    r.s_lane = num(13);
    r.s_p = num(14);
    r.tree_case = f[15];
    r.s_f = num(16);
    r.label = f[17];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<MetricRow> read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaMismatch("cannot open " + path.string());
  return read_csv(in, path.string());
}

Stats compute_stats(std::span<const double> values) {
  Stats s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  // Summation rounding must not push the mean outside the data range.
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

AggregateReport aggregate(std::span<const MetricRow> rows) {
  AggregateReport agg;
  for (const auto& col : metric_columns()) {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.*col.field);
    agg.frame_level.push_back({col.name, col.group, compute_stats(v)});
  }
  // Scenarios in order of first appearance.
  std::map<std::string, std::size_t> index;
  for (const auto& r : rows) {
    auto [it, inserted] = index.try_emplace(r.scenario_id, agg.scenarios.size());
    if (inserted) agg.scenarios.push_back({r.scenario_id, r.s_f});
    auto& sc = agg.scenarios[it->second];
    sc.min_s_f = std::min(sc.min_s_f, r.s_f);
  }
  std::vector<double> mins;
  for (const auto& sc : agg.scenarios) mins.push_back(sc.min_s_f);
  agg.scenario_level = compute_stats(mins);
  return agg;
}

MetricReport build_report(std::span<const ScenarioEvaluation> evals, RunMeta meta) {
  MetricReport rep;
  rep.per_frame = rows_from_evaluations(evals);
  rep.aggregate = aggregate(rep.per_frame);
  rep.average_precision = average_precision_by_class(evals);
  if (!rep.average_precision.empty()) {
    double a = 0.0, b = 0.0;
    for (const auto& c : rep.average_precision) {
      a += c.ap_allpoint;
      b += c.ap_11point;
    }
    const auto n = static_cast<double>(rep.average_precision.size());
    rep.map_allpoint = a / n;
    rep.map_11point = b / n;
  }
  rep.run_meta = std::move(meta);
  return rep;
}

namespace {

nlohmann::json stats_json(const Stats& s) {
  return {{"count", s.count}, {"mean", s.mean}, {"std", s.stddev}, {"min", s.min}, {"max", s.max}};
}

}  // namespace

nlohmann::json summary_json(const MetricReport& rep) {
  using nlohmann::json;
  json frame_level = json::object();
  for (const auto& m : rep.aggregate.frame_level) frame_level[m.name] = stats_json(m.stats);
  json scenarios = json::array();
  for (const auto& s : rep.aggregate.scenarios) {
    scenarios.push_back({{"scenario_id", s.scenario_id}, {"min_s_f", s.min_s_f}});
  }
  json ap = json::array();
  for (const auto& c : rep.average_precision) {
    ap.push_back({{"class", c.cls},
                  {"ground_truth", c.ground_truth},
                  {"ap_allpoint", c.ap_allpoint},
                  {"ap_11point", c.ap_11point}});
  }
  json meta = {{"seed", rep.run_meta.seed ? json(*rep.run_meta.seed) : json(nullptr)},
               {"params_hash", rep.run_meta.params_hash},
               {"tool_version", rep.run_meta.tool_version}};
  return {{"run_meta", meta},
          {"std_convention", "population"},
          {"frames", rep.per_frame.size()},
          {"frame_level", frame_level},
          {"scenario_level", {{"score", "min per-frame s_f"},
                              {"stats", stats_json(rep.aggregate.scenario_level)},
                              {"scenarios", scenarios}}},
          {"average_precision", {{"per_class", ap},
                                 {"map_allpoint", rep.map_allpoint ? json(*rep.map_allpoint) : json(nullptr)},
                                 {"map_11point", rep.map_11point ? json(*rep.map_11point) : json(nullptr)}}}};
}

std::string format_table(const AggregateReport& agg) {
  std::ostringstream out;
  auto row = [&](const std::string& name, const Stats& s) {
    out << "  " << std::left << std::setw(16) << name << std::right << std::setw(10)
        << format6(s.mean) << std::setw(10) << format6(s.stddev) << std::setw(10)
        << format6(s.min) << std::setw(10) << format6(s.max) << "\n";
  };
  out << std::left << std::setw(18) << "metric" << std::right << std::setw(10) << "mu"
      << std::setw(10) << "sigma" << std::setw(10) << "min" << std::setw(10) << "max" << "\n";
  std::string group;
  for (const auto& m : agg.frame_level) {
    if (m.group != group) {
      group = m.group;
      out << group << "\n";
    }
    row(m.name, m.stats);
  }
  out << "Scenario level (worst frame)\n";
  row("s_f", agg.scenario_level);
  out << "(sigma is the population standard deviation; " << agg.scenarios.size()
      << " scenarios)\n";
  return out.str();
}

void write_plot_series(const std::filesystem::path& dir, std::span<const MetricRow> rows) {
  std::filesystem::create_directories(dir);
  for (const auto& col : metric_columns()) {
    std::ofstream out(dir / (col.name + ".csv"));
    if (!out) throw std::runtime_error("cannot write " + (dir / (col.name + ".csv")).string());
    out << "scenario_id,frame,t_s,value\n";
    for (const auto& r : rows) {
      out << csv_field(r.scenario_id) << ',' << r.frame << ',' << format6(r.t) << ','
          << format6(r.*col.field) << "\n";
    }
  }
}

}  // namespace epsm

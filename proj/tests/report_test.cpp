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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "epsm/errors.hpp"
#include "epsm/report.hpp"

namespace epsm {
namespace {

MetricRow row(std::string id, std::size_t frame, double s_f) {
  MetricRow r;
  r.scenario_id = std::move(id);
  r.frame = frame;
  r.t = round6(0.1 * static_cast<double>(frame));
  r.s_f = s_f;
  r.s_obj = s_f;
  r.tree_case = "A2";
  r.label = "very good";
  return r;
}

TEST(Stats, Examples) {
  const std::vector<double> one = {0.42};
  const auto s1 = compute_stats(one);
  EXPECT_EQ(s1.mean, 0.42);
  EXPECT_EQ(s1.min, 0.42);
  EXPECT_EQ(s1.max, 0.42);
  EXPECT_EQ(s1.stddev, 0.0);
  const std::vector<double> two = {0.2, 0.8};
  const auto s2 = compute_stats(two);
  EXPECT_NEAR(s2.mean, 0.5, 1e-15);
  EXPECT_NEAR(s2.stddev, 0.3, 1e-15);
}

TEST(Csv, Format) {
  EXPECT_EQ(format6(-0.0), "0.000000");
  EXPECT_EQ(format6(-1e-9), "0.000000");
  EXPECT_EQ(format6(0.1234566), "0.123457");
  EXPECT_EQ(format6(2.5), "2.500000");
  EXPECT_EQ(round6(0.1234564), 0.123456);
}

TEST(Csv, RoundTrip) {
  std::vector<MetricRow> rows = {row("a,b", 0, 0.5), row("plain", 3, 0.25)};
  rows[0].label = "bad";
  std::stringstream buf;
  write_csv(buf, rows);
  EXPECT_EQ(read_csv(buf), rows);
}

TEST(Csv, SchemaMismatch) {
  std::stringstream wrong_header("scenario_id,frame\nx,1\n");
  EXPECT_THROW(read_csv(wrong_header), SchemaMismatch);
  std::stringstream buf;
  const std::vector<MetricRow> rows = {row("a", 0, 0.5)};
  write_csv(buf, rows);
  std::string text = buf.str();
  text.replace(text.rfind("0.500000"), 8, "zero");
  std::stringstream bad(text);
  EXPECT_THROW(read_csv(bad), SchemaMismatch);
  std::stringstream empty("");
  EXPECT_THROW(read_csv(empty), SchemaMismatch);
}

TEST(Aggregate, ScenarioMinimumAndUnion) {
  const std::vector<MetricRow> a = {row("x", 0, 0.9), row("x", 1, 0.3), row("y", 0, 0.7)};
  const std::vector<MetricRow> b = {row("z", 0, 0.1), row("z", 1, 0.5)};
  const auto agg_a = aggregate(a);
  ASSERT_EQ(agg_a.scenarios.size(), 2u);
  EXPECT_EQ(agg_a.scenarios[0].min_s_f, 0.3);
  EXPECT_EQ(agg_a.scenarios[1].min_s_f, 0.7);

  std::vector<MetricRow> all = a;
  all.insert(all.end(), b.begin(), b.end());
  const auto agg = aggregate(all);
  // Union moments from the parts.
  const auto find = [](const AggregateReport& r, const std::string& n) {
    for (const auto& m : r.frame_level) {
      if (m.name == n) return m.stats;
    }
    return Stats{};
  };
  const auto sa = find(agg_a, "s_f");
  const auto sb = find(aggregate(b), "s_f");
  const auto su = find(agg, "s_f");
  const double n = static_cast<double>(sa.count + sb.count);
  const double mean = (sa.mean * sa.count + sb.mean * sb.count) / n;
  const double ex2 = ((sa.stddev * sa.stddev + sa.mean * sa.mean) * sa.count +
                      (sb.stddev * sb.stddev + sb.mean * sb.mean) * sb.count) / n;
  EXPECT_NEAR(su.mean, mean, 1e-12);
  EXPECT_NEAR(su.stddev, std::sqrt(ex2 - mean * mean), 1e-12);
  EXPECT_EQ(su.min, std::min(sa.min, sb.min));
  EXPECT_EQ(su.max, std::max(sa.max, sb.max));
  EXPECT_GE(su.mean, su.min);
  EXPECT_LE(su.mean, su.max);
}

TEST(Aggregate, TableGroups) {
  const std::vector<MetricRow> rows = {row("x", 0, 0.9)};
  const auto table = format_table(aggregate(rows));
  const auto od = table.find("Object Detection");
  const auto ld = table.find("Lane Detection");
  const auto ep = table.find("EPSM");
  ASSERT_NE(od, std::string::npos);
  EXPECT_LT(od, ld);
  EXPECT_LT(ld, ep);
  EXPECT_NE(table.find("population"), std::string::npos);
}

}  // namespace
}  // namespace epsm

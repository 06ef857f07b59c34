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

#include <random>

#include "epsm/errors.hpp"
#include "epsm/perf_metrics.hpp"
#include "oracles.hpp"

namespace epsm {
namespace {

TEST(Iou, Cases) {
  const Box2D a{{0, 0}, 0.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_EQ(iou(a, Box2D{{5, 5}, 0.0, 1.0, 1.0}), 0.0);
  EXPECT_NEAR(iou(a, Box2D{{0.5, 0}, 0.0, 1.0, 1.0}), 1.0 / 3.0, 1e-12);
  // A square rotated by 90 degrees is the same footprint.
  EXPECT_NEAR(iou(a, Box2D{{0, 0}, 1.5707963267948966, 1.0, 1.0}), 1.0, 1e-12);
}

TEST(Iou, SymmetricAndBounded) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> p(-2, 2), h(-3.14, 3.14), s(0.5, 5);
  for (int i = 0; i < 2000; ++i) {
    const Box2D a{{p(rng), p(rng)}, h(rng), s(rng), s(rng)};
    const Box2D b{{p(rng), p(rng)}, h(rng), s(rng), s(rng)};
    const double ab = iou(a, b);
    EXPECT_NEAR(ab, iou(b, a), 1e-12);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0 + 1e-12);
  }
}

TEST(Scores, Examples) {
  const auto s = precision_recall_f1_accuracy({8, 2, 2, 0});
  EXPECT_DOUBLE_EQ(s.precision.value, 0.8);
  EXPECT_DOUBLE_EQ(s.recall.value, 0.8);
  EXPECT_NEAR(s.f1.value, 0.8, 1e-15);
  const auto perfect = precision_recall_f1_accuracy({5, 0, 0, 0});
  EXPECT_EQ(perfect.precision.value, 1.0);
  EXPECT_EQ(perfect.recall.value, 1.0);
  EXPECT_EQ(perfect.f1.value, 1.0);
  const auto empty = precision_recall_f1_accuracy({0, 0, 0, 0});
  EXPECT_TRUE(empty.precision.degenerate);
  EXPECT_EQ(empty.precision.value, 0.0);
  EXPECT_TRUE(empty.f1.degenerate);
  const auto acc = precision_recall_f1_accuracy({6, 1, 1, 2});
  EXPECT_DOUBLE_EQ(acc.accuracy.value, 0.8);
}

TEST(Scores, F1BetweenPrecisionAndRecall) {
  for (std::size_t tp = 1; tp < 20; ++tp) {
    for (std::size_t fp = 0; fp < 20; fp += 3) {
      for (std::size_t fn = 0; fn < 20; fn += 4) {
        const auto s = precision_recall_f1_accuracy({tp, fp, fn, 0});
        EXPECT_LE(s.f1.value, std::max(s.precision.value, s.recall.value) + 1e-15);
        EXPECT_GE(s.f1.value, std::min(s.precision.value, s.recall.value) - 1e-15);
      }
    }
  }
}

TEST(AveragePrecision, WorkedExamples) {
  const std::vector<PRPoint> curve = {{0.5, 1.0, 0.9}, {1.0, 0.5, 0.1}};
  EXPECT_NEAR(ap_11point(curve), 8.5 / 11.0, 1e-15);
  EXPECT_NEAR(ap_11point(curve), 0.7727, 1e-4);
  EXPECT_DOUBLE_EQ(ap_allpoint(curve), 0.75);
  const std::vector<PRPoint> single = {{1.0, 1.0, 1.0}};
  EXPECT_EQ(ap_allpoint(single), 1.0);
  EXPECT_EQ(ap_11point(single), 1.0);
  const std::vector<PRPoint> no_tp = {{0.0, 0.0, 0.9}, {0.0, 0.0, 0.5}};
  EXPECT_EQ(ap_11point(no_tp), 0.0);
  EXPECT_EQ(ap_allpoint(no_tp), 0.0);
}

TEST(AveragePrecision, PerfectDetector) {
  std::vector<ScoredDetection> dets;
  for (int i = 0; i < 10; ++i) dets.push_back({1.0 - 0.05 * i, true});
  const auto curve = pr_curve(dets, 10);
  EXPECT_EQ(ap_11point(curve), 1.0);
  EXPECT_EQ(ap_allpoint(curve), 1.0);
}

TEST(AveragePrecision, PrCurveRecallNonDecreasing) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto c = oracle::random_pr_curve(rng);
    for (std::size_t k = 1; k < c.size(); ++k) {
      EXPECT_GE(c[k].recall, c[k - 1].recall);
      EXPECT_LE(c[k].threshold, c[k - 1].threshold);
    }
  }
}

TEST(AveragePrecision, MatchesStaircaseOracle) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const auto c = oracle::random_pr_curve(rng);
    const double ap = ap_allpoint(c);
    EXPECT_NEAR(ap, oracle::staircase_area(c), 1e-12);
    EXPECT_LE(ap, 1.0);
    EXPECT_LE(ap_11point(c), 1.0);
    // The interpolated staircase dominates the raw lower sum.
    double lower = 0.0, prev = 0.0;
    for (const auto& p : c) {
      lower += (p.recall - prev) * p.precision;
      prev = p.recall;
    }
    EXPECT_GE(ap + 1e-12, lower);
  }
}

TEST(AveragePrecision, MeanAp) {
  EXPECT_EQ(mean_ap({{"car", 1.0}}), 1.0);
  EXPECT_DOUBLE_EQ(mean_ap({{"car", 0.8}, {"pedestrian", 0.4}}), 0.6);
  EXPECT_DOUBLE_EQ(mean_ap({{"x", 0.8}, {"y", 0.4}}), mean_ap({{"car", 0.4}, {"b", 0.8}}));
  EXPECT_THROW(mean_ap({}), EmptyInputError);
}

TEST(Clear, Moda) {
  const std::vector<std::size_t> zero = {0, 0, 0};
  const std::vector<std::size_t> g = {3, 3, 4};
  EXPECT_EQ(moda(zero, zero, g), 1.0);
  const std::vector<std::size_t> m = {1, 0, 1};
  const std::vector<std::size_t> fp = {0, 1, 0};
  EXPECT_NEAR(moda(m, fp, g), 0.7, 1e-15);
  const std::vector<std::size_t> many = {5, 5, 5};
  EXPECT_LT(moda(many, many, g), 0.0);
  EXPECT_THROW(moda(zero, zero, zero), DegenerateInputError);
}

TEST(Clear, Modp) {
  const std::vector<double> ones = {1.0, 1.0};
  EXPECT_EQ(modp(ones).value, 1.0);
  const std::vector<double> two = {0.8, 0.6};
  EXPECT_NEAR(modp(two).value, 0.7, 1e-15);
  const auto none = modp({});
  EXPECT_EQ(none.value, 0.0);
  EXPECT_TRUE(none.degenerate);
}

TEST(LanePoints, Confusion) {
  const Polyline gt = {{0, 0}, {10, 0}};
  const auto same = lane_point_confusion(gt, gt, 0.5);
  EXPECT_EQ(same.tp, 21u);
  EXPECT_EQ(same.fp, 0u);
  EXPECT_EQ(same.fn, 0u);

  const Polyline shifted = {{0, 1}, {10, 1}};
  const auto off = lane_point_confusion(gt, shifted, 0.5);
  EXPECT_EQ(off.tp, 0u);
  EXPECT_EQ(off.fp, 21u);
  EXPECT_EQ(off.fn, 21u);

  const Polyline half = {{0, 0}, {5, 0}};
  const auto h = lane_point_confusion(gt, half, 0.5);
  EXPECT_EQ(h.tp, 11u);
  EXPECT_EQ(h.fp, 0u);
  EXPECT_EQ(h.fn, 9u);  // 6.0 .. 10.0; 5.5 is within reach of 5.0

  const std::vector<Polyline> negatives = {{{0, 3.5}, {10, 3.5}}};
  EXPECT_EQ(lane_point_confusion(gt, gt, 0.5, 0.5, negatives).tn, 21u);
  const Polyline drift = {{0, 3.5}, {10, 3.5}};
  EXPECT_EQ(lane_point_confusion(gt, drift, 0.5, 0.5, negatives).tn, 0u);
}

}  // namespace
}  // namespace epsm

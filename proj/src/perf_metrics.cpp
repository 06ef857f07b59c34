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

#include "epsm/perf_metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "epsm/errors.hpp"

namespace epsm {

double iou(const Box2D& a, const Box2D& b) {
  const auto pa = corners(a);
  const auto pb = corners(b);
  const double area_a = std::abs(polygon_area(pa));
  const double area_b = std::abs(polygon_area(pb));
  const auto inter_poly = clip_convex(pa, pb);
  const double inter = inter_poly.size() >= 3 ? std::abs(polygon_area(inter_poly)) : 0.0;
  const double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

namespace {

Ratio ratio(double num, double den) {
  if (den <= 0.0) return {0.0, true};
  return {num / den, false};
}

}  // namespace

ClassificationScores precision_recall_f1_accuracy(const ConfusionCounts& c) {
  const auto tp = static_cast<double>(c.tp);
  const auto fp = static_cast<double>(c.fp);
  const auto fn = static_cast<double>(c.fn);
  const auto tn = static_cast<double>(c.tn);
  ClassificationScores s;
  s.precision = ratio(tp, tp + fp);
  s.recall = ratio(tp, tp + fn);
  if (s.precision.degenerate || s.recall.degenerate) {
    s.f1 = {0.0, true};
  } else {
    s.f1 = ratio(2.0 * s.precision.value * s.recall.value, s.precision.value + s.recall.value);
  }
  s.accuracy = ratio(tp + tn, tp + tn + fp + fn);
  return s;
}

std::vector<PRPoint> pr_curve(std::span<const ScoredDetection> detections,
                              std::size_t num_ground_truth) {
  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detections[a].confidence > detections[b].confidence;
  });
  std::vector<PRPoint> curve;
  curve.reserve(order.size());
  std::size_t tp = 0;
  std::size_t seen = 0;
  for (std::size_t idx : order) {
    ++seen;
    if (detections[idx].true_positive) ++tp;
    const double recall =
        num_ground_truth == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(num_ground_truth);
    curve.push_back({recall, static_cast<double>(tp) / static_cast<double>(seen),
                     detections[idx].confidence});
  }
  return curve;
}

double ap_11point(std::span<const PRPoint> curve) {
  double sum = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double level = k / 10.0;
    double best = 0.0;
    for (const auto& pt : curve) {
      if (pt.recall >= level) best = std::max(best, pt.precision);
    }
    sum += best;
  }
  return sum / 11.0;
}

double ap_allpoint(std::span<const PRPoint> curve) {
  // Running max from the right gives the interpolated precision.
  std::vector<double> interp(curve.size());
  double run = 0.0;
  for (std::size_t i = curve.size(); i-- > 0;) {
    run = std::max(run, curve[i].precision);
    interp[i] = run;
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    ap += (curve[i].recall - prev_recall) * interp[i];
    prev_recall = curve[i].recall;
  }
  return ap;
}

double mean_ap(const std::map<std::string, double>& per_class) {
  if (per_class.empty()) throw EmptyInputError("mean_ap of no classes");
  double sum = 0.0;
  for (const auto& [_, ap] : per_class) sum += ap;
  return sum / static_cast<double>(per_class.size());
}

double moda(std::span<const std::size_t> misses, std::span<const std::size_t> false_positives,
            std::span<const std::size_t> ground_truths) {
  if (misses.size() != false_positives.size() || misses.size() != ground_truths.size()) {
    throw std::invalid_argument("moda: series lengths differ");
  }
  double errors = 0.0;
  double gts = 0.0;
  for (std::size_t t = 0; t < misses.size(); ++t) {
    errors += static_cast<double>(misses[t] + false_positives[t]);
    gts += static_cast<double>(ground_truths[t]);
  }
  if (gts == 0.0) throw DegenerateInputError("moda: no ground-truth objects");
  return 1.0 - errors / gts;
}

Ratio modp(std::span<const double> matched_ious) {
  if (matched_ious.empty()) return {0.0, true};
  const double sum = std::accumulate(matched_ious.begin(), matched_ious.end(), 0.0);
  return {sum / static_cast<double>(matched_ious.size()), false};
}

namespace {

bool any_within(std::span<const Vec2> pts, Vec2 q, double threshold) {
  return std::any_of(pts.begin(), pts.end(),
                     [&](const Vec2& p) { return norm(p - q) <= threshold; });
}

}  // namespace

ConfusionCounts lane_point_confusion(std::span<const Vec2> gt, std::span<const Vec2> det,
                                     double threshold, double spacing,
                                     std::span<const Polyline> negative_lines) {
  const Polyline gt_pts = gt.size() >= 2 ? resample(gt, spacing) : Polyline(gt.begin(), gt.end());
  const Polyline det_pts = det.size() >= 2 ? resample(det, spacing) : Polyline(det.begin(), det.end());
  ConfusionCounts c;
  for (const auto& p : det_pts) {
    if (any_within(gt_pts, p, threshold)) {
      ++c.tp;
    } else {
      ++c.fp;
    }
  }
  for (const auto& q : gt_pts) {
    if (!any_within(det_pts, q, threshold)) ++c.fn;
  }
  for (const auto& line : negative_lines) {
    if (line.size() < 2) continue;
    for (const auto& q : resample(line, spacing)) {
      if (!any_within(det_pts, q, threshold)) ++c.tn;
    }
  }
  return c;
}

}  // namespace epsm

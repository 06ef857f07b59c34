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

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "epsm/geometry.hpp"

namespace epsm {

// Jaccard index of two oriented footprints.
double iou(const Box2D& a, const Box2D& b);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  bool operator==(const ConfusionCounts&) const = default;
};

// A ratio whose denominator may be empty; empty gives value 0, degenerate.
struct Ratio {
  double value = 0.0;
  bool degenerate = false;
};

struct ClassificationScores {
  Ratio precision;
  Ratio recall;
  Ratio f1;
  Ratio accuracy;
};

ClassificationScores precision_recall_f1_accuracy(const ConfusionCounts& c);

struct PRPoint {
  double recall = 0.0;
  double precision = 0.0;
  double threshold = 0.0;
};

struct ScoredDetection {
  double confidence = 0.0;
  bool true_positive = false;
};

// Cumulative PR curve over detections ranked by descending confidence
// (ties keep input order). Recall is relative to num_ground_truth.
std::vector<PRPoint> pr_curve(std::span<const ScoredDetection> detections,
                              std::size_t num_ground_truth);

// Mean over recall levels 0.0, 0.1, ..., 1.0 of the best precision at
// recall >= level (0 where no point reaches it).
double ap_11point(std::span<const PRPoint> curve);

// Sum of recall increments times interpolated precision, starting from an
// implicit recall of 0. `curve` is sorted by increasing recall.
double ap_allpoint(std::span<const PRPoint> curve);

// Arithmetic mean; throws EmptyInputError on an empty map.
double mean_ap(const std::map<std::string, double>& per_class);

// 1 - sum(m + fp) / sum(g). Not clamped. Throws DegenerateInputError when
// sum(g) == 0 and std::invalid_argument on length mismatch.
double moda(std::span<const std::size_t> misses, std::span<const std::size_t> false_positives,
            std::span<const std::size_t> ground_truths);

// Mean IoU over mapped pairs; degenerate when nothing was mapped.
Ratio modp(std::span<const double> matched_ious);

// Point-level lane confusion after resampling both lines at `spacing`.
// A detected point within `threshold` of a ground-truth point is TP, else FP;
// a ground-truth point with no detected point in range is FN. Points sampled
// from `negative_lines` (lanes that are not the target) with no detected
// point in range count as TN.
ConfusionCounts lane_point_confusion(std::span<const Vec2> gt, std::span<const Vec2> det,
                                     double threshold, double spacing = 0.5,
                                     std::span<const Polyline> negative_lines = {});

}  // namespace epsm

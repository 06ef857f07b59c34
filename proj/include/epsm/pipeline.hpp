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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "epsm/combiner.hpp"
#include "epsm/execution.hpp"
#include "epsm/lane_safety.hpp"
#include "epsm/object_safety.hpp"
#include "epsm/perf_metrics.hpp"
#include "epsm/scenario.hpp"
#include "epsm/severity.hpp"

namespace epsm {

struct ClassDetection {
  ObjectClass cls;
  ScoredDetection det;
};

// Everything computed for one frame.
struct FrameEvaluation {
  std::size_t frame_index = 0;
  double t = 0.0;

  // Performance baselines.
  ConfusionCounts object_counts;
  ClassificationScores object_scores;
  ConfusionCounts lane_counts;
  ClassificationScores lane_scores;
  Ratio modp;
  std::vector<ClassDetection> scored;  // for AP
  std::vector<std::pair<ObjectClass, std::size_t>> gt_per_class;

  // Safety.
  MatchResult match;
  ObjectSafety object_safety;
  LaneSafetyBreakdown lane;
  TreeInputs tree;
  SafetyBreakdown safety;
};

struct ScenarioEvaluation {
  std::string scenario_id;
  std::vector<FrameEvaluation> frames;
  std::vector<Ratio> moda_cumulative;  // MODA over frames 0..t

  // Worst frame; safety is judged by its weakest moment.
  double scenario_score() const;
};

// Ground-truth objects and detections within the detection distance of the
// ego are evaluated; the rest are outside the sensor's scope.
std::vector<ObjectState> objects_in_range(const Frame& frame, const MetricParams& params);
std::vector<DetectedBox> detections_in_range(const Frame& frame, const MetricParams& params);

FrameEvaluation evaluate_frame(const Scenario& scenario, std::size_t frame_index,
                               const VehicleSeverityModel& model);

// Serial reference: scenarios and frames in order.
std::vector<ScenarioEvaluation> evaluate_corpus_serial(std::span<const Scenario> scenarios,
                                                       const VehicleSeverityModel& model);
// OpenMP kernel over every (scenario, frame) pair; results are written into
// fixed slots, so the output equals the serial path bit for bit.
std::vector<ScenarioEvaluation> evaluate_corpus_parallel(std::span<const Scenario> scenarios,
                                                         const VehicleSeverityModel& model,
                                                         int threads);
std::vector<ScenarioEvaluation> evaluate_corpus(std::span<const Scenario> scenarios,
                                                const VehicleSeverityModel& model, Execution exec);

// Per-class all-point and 11-point AP over the whole corpus; classes with
// no ground truth are skipped.
struct ClassAp {
  std::string cls;
  std::size_t ground_truth = 0;
  double ap_allpoint = 0.0;
  double ap_11point = 0.0;
};
std::vector<ClassAp> average_precision_by_class(std::span<const ScenarioEvaluation> evals);

}  // namespace epsm

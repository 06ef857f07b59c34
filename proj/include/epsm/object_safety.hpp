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

#include <span>
#include <string>
#include <vector>

#include "epsm/scenario.hpp"
#include "epsm/severity.hpp"

namespace epsm {

struct MatchPair {
  std::string gt_id;
  std::size_t det_index = 0;
  double iou = 0.0;
};

struct MatchResult {
  std::vector<MatchPair> pairs;
  std::vector<std::string> fn_ids;
  std::vector<std::size_t> fp_indices;

  bool is_missed(const std::string& id) const;
};

// Greedy same-class matching in descending IoU order (ties: lower gt id,
// then lower detection index). A pair is accepted only at or above the
// class IoU threshold.
MatchResult match(std::span<const ObjectState> gt, std::span<const DetectedBox> det,
                  const MetricParams& params);

struct WeightedObject {
  std::string id;
  double criticality = 0.0;
  double severity = 0.0;
  double weight = 0.0;  // criticality * severity when missed, else 0
  bool missed = false;
};

// 1 - (16 w0 + 4 w1 + sum w_i) / (16 c0 + 4 c1 + sum c_i) with the (w, c)
// pairs sorted by descending weight, ties by descending criticality.
// A zero denominator yields 1.
double weighted_safety_score(std::span<const WeightedObject> objects);

struct ObjectSafety {
  double s_obj = 1.0;
  std::vector<WeightedObject> objects;  // input order
};

ObjectSafety object_safety_score(const ObjectState& ego, std::span<const ObjectState> objects,
                                 const MatchResult& match, const MetricParams& params,
                                 const VehicleSeverityModel& model);
ObjectSafety object_safety_score(const Frame& frame, const MatchResult& match,
                                 const MetricParams& params, const VehicleSeverityModel& model);

// Missed objects whose center lies within half the lane width of its
// centerline.
std::vector<ObjectState> missed_objects_in_lane(std::span<const ObjectState> objects,
                                                const MatchResult& match, const LaneRecord& lane);

}  // namespace epsm

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

#include "epsm/scenario.hpp"

namespace epsm {

struct LaneSafetyBreakdown {
  double s_long = 0.0;
  std::optional<double> d_lat_mean;  // absent without a detected lane
  double s_lat = 0.8;
  std::optional<double> s_sem;  // present iff !lateral_safe
  double s_lane = 0.0;
  bool lateral_safe = false;
};

constexpr double kLaneResampleSpacing = 0.5;  // m
constexpr double kReactionTime = 1.0;         // s

// Mean perpendicular distance from the detected centerline, resampled at
// 0.5 m arc length, to the ground-truth centerline.
// Throws EmptyDetectionError on an empty detection.
double mean_lateral_deviation(std::span<const Vec2> gt_centerline,
                              std::span<const Vec2> det_centerline);

struct LateralRating {
  double s_lat = 0.8;
  bool safe = false;
};

// th_lat = (lane_width - vehicle_width) / 2. Below 0.8 th_lat the score
// falls linearly from 1.0 to 0.8; at or above it the score is capped at 0.8
// and the lateral detection is unsafe. Throws GeometryError when the
// vehicle does not fit the lane.
LateralRating lateral_rating(double d_mean, double lane_width, double vehicle_width);

// min(1, range / d_req) with d_req = v^2 / (2 a) + v t_react.
double longitudinal_rating(double detected_range, double ego_speed, double brake_decel);

// Closing-speed bands (km/h): <30 -> [0.6, 0.8], <60 -> [0.4, 0.6),
// <100 -> [0.2, 0.4), >=100 -> [0.0, 0.2), linear inside each band and
// reaching 0 at 200 km/h.
double semantic_band_score(double v_rel_kmh);

// True when the ego footprint, placed on any detected centerline point,
// crosses into the given lane.
bool footprint_intrudes(std::span<const Vec2> det_centerline, const LaneRecord& lane,
                        double vehicle_width);

// 0.8 unless the detected lane intrudes into an oncoming lane, in which case
// the closing speed ego + speed limit is banded.
double semantic_rating(const ObjectState& ego, const LaneMap& map,
                       std::span<const Vec2> det_centerline);

// s_long * s_lat when laterally safe, otherwise s_long * s_sem.
LaneSafetyBreakdown lane_safety_score(double s_long, std::optional<double> d_lat_mean,
                                      LateralRating lateral, std::optional<double> s_sem);

// Full lane evaluation of one frame. Without a detected lane the range is 0
// and the lateral detection is unsafe with no intrusion.
LaneSafetyBreakdown evaluate_lane_safety(const ObjectState& ego, const LaneMap& map,
                                         const std::optional<Polyline>& det_centerline,
                                         const MetricParams& params);

}  // namespace epsm

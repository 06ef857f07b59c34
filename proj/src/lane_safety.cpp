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

#include "epsm/lane_safety.hpp"

#include <algorithm>

#include "epsm/errors.hpp"

namespace epsm {

double mean_lateral_deviation(std::span<const Vec2> gt_centerline,
                              std::span<const Vec2> det_centerline) {
  if (det_centerline.empty()) throw EmptyDetectionError("no detected lane points");
  const Polyline pts = det_centerline.size() >= 2
                           ? resample(det_centerline, kLaneResampleSpacing)
                           : Polyline(det_centerline.begin(), det_centerline.end());
  double sum = 0.0;
  for (const auto& p : pts) sum += distance_to_polyline(gt_centerline, p);
  return sum / static_cast<double>(pts.size());
}

LateralRating lateral_rating(double d_mean, double lane_width, double vehicle_width) {
  if (!(vehicle_width > 0.0) || !(lane_width > vehicle_width)) {
    throw GeometryError("vehicle width " + std::to_string(vehicle_width) +
                        " m does not fit lane width " + std::to_string(lane_width) + " m");
  }
  const double th_lat = 0.5 * (lane_width - vehicle_width);
  const double trigger = 0.8 * th_lat;
  if (d_mean < trigger) return {1.0 - 0.2 * (d_mean / trigger), true};
  return {0.8, false};
}

double longitudinal_rating(double detected_range, double ego_speed, double brake_decel) {
  const double v = std::abs(ego_speed);
  const double d_req = v * v / (2.0 * brake_decel) + v * kReactionTime;
  if (d_req <= 0.0) return 1.0;
  return std::min(1.0, std::max(0.0, detected_range) / d_req);
}

double semantic_band_score(double v) {
  v = std::max(0.0, v);
  if (v < 30.0) return 0.8 - 0.2 * (v / 30.0);
  if (v < 60.0) return 0.6 - 0.2 * ((v - 30.0) / 30.0);
  if (v < 100.0) return 0.4 - 0.2 * ((v - 60.0) / 40.0);
  return std::max(0.0, 0.2 - 0.2 * ((v - 100.0) / 100.0));
}

bool footprint_intrudes(std::span<const Vec2> det_centerline, const LaneRecord& lane,
                        double vehicle_width) {
  if (det_centerline.empty() || lane.centerline.size() < 2) return false;
  const Polyline pts = det_centerline.size() >= 2
                           ? resample(det_centerline, kLaneResampleSpacing)
                           : Polyline(det_centerline.begin(), det_centerline.end());
  const double reach = 0.5 * (lane.width + vehicle_width);
  return std::any_of(pts.begin(), pts.end(), [&](const Vec2& p) {
    return distance_to_polyline(lane.centerline, p) < reach;
  });
}

double semantic_rating(const ObjectState& ego, const LaneMap& map,
                       std::span<const Vec2> det_centerline) {
  const bool intrudes = std::any_of(map.adjacent.begin(), map.adjacent.end(), [&](const AdjacentLane& a) {
    return a.relation == LaneRelation::Oncoming &&
           footprint_intrudes(det_centerline, a.lane, ego.width);
  });
  if (!intrudes) return 0.8;
  return semantic_band_score((ego.speed() + map.speed_limit) * kMpsToKmh);
}

LaneSafetyBreakdown lane_safety_score(double s_long, std::optional<double> d_lat_mean,
                                      LateralRating lateral, std::optional<double> s_sem) {
  LaneSafetyBreakdown b;
  b.s_long = s_long;
  b.d_lat_mean = d_lat_mean;
  b.s_lat = lateral.s_lat;
  b.lateral_safe = lateral.safe;
  if (lateral.safe) {
    b.s_lane = s_long * lateral.s_lat;
  } else {
    b.s_sem = s_sem.value_or(0.8);
    b.s_lane = s_long * *b.s_sem;
  }
  b.s_lane = std::clamp(b.s_lane, 0.0, 1.0);
  return b;
}

LaneSafetyBreakdown evaluate_lane_safety(const ObjectState& ego, const LaneMap& map,
                                         const std::optional<Polyline>& det_centerline,
                                         const MetricParams& params) {
  if (!det_centerline || det_centerline->empty()) {
    const double s_long = longitudinal_rating(0.0, ego.speed(), params.brake_decel);
    return lane_safety_score(s_long, std::nullopt, {0.8, false}, 0.8);
  }
  const auto& det = *det_centerline;
  const double d_mean = mean_lateral_deviation(map.ego_lane.centerline, det);
  const LateralRating lat = lateral_rating(d_mean, map.ego_lane.width, ego.width);
  const double s_long = longitudinal_rating(polyline_length(det), ego.speed(), params.brake_decel);
  std::optional<double> s_sem;
  if (!lat.safe) s_sem = semantic_rating(ego, map, det);
  return lane_safety_score(s_long, d_mean, lat, s_sem);
}

}  // namespace epsm

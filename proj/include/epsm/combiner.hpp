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
#include <string_view>

#include "epsm/scenario.hpp"

namespace epsm {

enum class TreeCase { A1, A2, B1_1, B1_2, B2 };
std::string_view to_string(TreeCase c);

// Five-level classification of the final score.
enum class SafetyLabel { Insufficient, VeryBad, Bad, Good, VeryGood };
std::string_view to_string(SafetyLabel l);

struct Adjustment {
  enum class Kind { None, Bonus, Penalty };
  Kind kind = Kind::None;
  double factor = 1.0;            // F_b or F_p
  std::optional<double> ttc_min;  // penalty only
};

struct SafetyBreakdown {
  double s_obj = 1.0;
  double s_lane = 1.0;
  double s_p = 1.0;
  TreeCase tree_case = TreeCase::A2;
  Adjustment adjustment;
  double s_f = 1.0;
  SafetyLabel label = SafetyLabel::VeryGood;
};

// 1 - (((1 - s_obj)^p + (1 - s_lane)^p) / 2)^(1/p)
double power_mean_fuse(double s_obj, double s_lane, double p);

enum class MissSurface { Road, Sidewalk };

// Surface under the missed objects inside the detected lane: Sidewalk when
// every one of them stands on a sidewalk lane, Road otherwise, none when
// the list is empty.
std::optional<MissSurface> in_lane_miss_surface(std::span<const ObjectState> missed_in_lane,
                                                const LaneMap& map);

// Any missed object centered in a lane adjacent to the ego lane.
bool missed_in_adjacent_lane(std::span<const ObjectState> missed, const LaneMap& map);

TreeCase classify_tree_case(bool lateral_safe, bool missed_adjacent,
                            std::optional<MissSurface> in_lane_miss);

// F_b > 1: s_p + (F_b - 1)(1 - s_p); F_b < 1: s_p - (1 - F_b) s_p; else s_p.
double apply_bonus(double s_p, double f_b);

// Piecewise linear in TTC_min: [0, 2] s -> [0.6, 0.8], (2, 4] -> (0.8, 0.9],
// (4, 8] -> (0.9, 1.0], beyond 8 s -> 1.0.
double penalty_factor(double ttc_min);
double apply_penalty(double s_p, double ttc_min);

SafetyLabel classify_label(double s_f);

struct TreeInputs {
  bool lateral_safe = true;
  bool missed_adjacent = false;
  std::optional<MissSurface> in_lane_miss;
  // Lowest TTC over the missed objects inside the detected lane; none when
  // no such object is on a collision course.
  std::optional<double> ttc_min;
};

SafetyBreakdown final_safety(double s_obj, double s_lane, const TreeInputs& tree,
                             const MetricParams& params);

}  // namespace epsm

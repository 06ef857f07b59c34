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

#include "epsm/combiner.hpp"

#include <algorithm>
#include <cmath>

namespace epsm {

std::string_view to_string(TreeCase c) {
  switch (c) {
    case TreeCase::A1: return "A1";
    case TreeCase::A2: return "A2";
    case TreeCase::B1_1: return "B1.1";
    case TreeCase::B1_2: return "B1.2";
    case TreeCase::B2: return "B2";
  }
  return "A2";
}

std::string_view to_string(SafetyLabel l) {
  switch (l) {
    case SafetyLabel::Insufficient: return "insufficient";
    case SafetyLabel::VeryBad: return "very bad";
    case SafetyLabel::Bad: return "bad";
    case SafetyLabel::Good: return "good";
    case SafetyLabel::VeryGood: return "very good";
  }
  return "insufficient";
}

double power_mean_fuse(double s_obj, double s_lane, double p) {
  const double a = 1.0 - s_obj;
  const double b = 1.0 - s_lane;
  if (a == b) return s_obj;
  const double m = std::pow(0.5 * (std::pow(a, p) + std::pow(b, p)), 1.0 / p);
  return std::clamp(1.0 - m, 0.0, 1.0);
}

std::optional<MissSurface> in_lane_miss_surface(std::span<const ObjectState> missed_in_lane,
                                                const LaneMap& map) {
  if (missed_in_lane.empty()) return std::nullopt;
  const bool all_sidewalk = std::all_of(missed_in_lane.begin(), missed_in_lane.end(), [&](const ObjectState& o) {
    return std::any_of(map.adjacent.begin(), map.adjacent.end(), [&](const AdjacentLane& a) {
      return a.relation == LaneRelation::Sidewalk && a.lane.contains(o.position);
    });
  });
  return all_sidewalk ? MissSurface::Sidewalk : MissSurface::Road;
}

bool missed_in_adjacent_lane(std::span<const ObjectState> missed, const LaneMap& map) {
  return std::any_of(missed.begin(), missed.end(), [&](const ObjectState& o) {
    return std::any_of(map.adjacent.begin(), map.adjacent.end(),
                       [&](const AdjacentLane& a) { return a.lane.contains(o.position); });
  });
}

TreeCase classify_tree_case(bool lateral_safe, bool missed_adjacent,
                            std::optional<MissSurface> in_lane_miss) {
  if (lateral_safe) return missed_adjacent ? TreeCase::A1 : TreeCase::A2;
  if (!in_lane_miss) return TreeCase::B2;
  return *in_lane_miss == MissSurface::Sidewalk ? TreeCase::B1_1 : TreeCase::B1_2;
}

double apply_bonus(double s_p, double f_b) {
  double s_f = s_p;
  if (f_b > 1.0) {
    s_f = s_p + (f_b - 1.0) * (1.0 - s_p);
  } else if (f_b < 1.0) {
    s_f = s_p - (1.0 - f_b) * s_p;
  }
  return std::clamp(s_f, 0.0, 1.0);
}

double penalty_factor(double ttc_min) {
  const double t = std::max(0.0, ttc_min);
  if (t <= 2.0) return 0.6 + 0.2 * (t / 2.0);
  if (t <= 4.0) return 0.8 + 0.1 * ((t - 2.0) / 2.0);
  if (t <= 8.0) return 0.9 + 0.1 * ((t - 4.0) / 4.0);
  return 1.0;
}

double apply_penalty(double s_p, double ttc_min) {
  return std::clamp(penalty_factor(ttc_min) * s_p, 0.0, 1.0);
}

SafetyLabel classify_label(double s_f) {
  if (s_f <= 0.2) return SafetyLabel::Insufficient;
  if (s_f <= 0.4) return SafetyLabel::VeryBad;
  if (s_f <= 0.6) return SafetyLabel::Bad;
  if (s_f <= 0.8) return SafetyLabel::Good;
  return SafetyLabel::VeryGood;
}

SafetyBreakdown final_safety(double s_obj, double s_lane, const TreeInputs& tree,
                             const MetricParams& params) {
  SafetyBreakdown b;
  b.s_obj = s_obj;
  b.s_lane = s_lane;
  b.s_p = power_mean_fuse(s_obj, s_lane, params.power_mean_p);
  b.tree_case = classify_tree_case(tree.lateral_safe, tree.missed_adjacent, tree.in_lane_miss);
  switch (b.tree_case) {
    case TreeCase::A1:
    case TreeCase::B2:
      b.adjustment = {Adjustment::Kind::Bonus, params.bonus_factor, std::nullopt};
      b.s_f = apply_bonus(b.s_p, params.bonus_factor);
      break;
    case TreeCase::B1_1:
    case TreeCase::B1_2: {
      const double f_p = tree.ttc_min ? penalty_factor(*tree.ttc_min) : 1.0;
      b.adjustment = {Adjustment::Kind::Penalty, f_p, tree.ttc_min};
      b.s_f = std::clamp(f_p * b.s_p, 0.0, 1.0);
      break;
    }
    case TreeCase::A2:
      b.s_f = b.s_p;
      break;
  }
  b.label = classify_label(b.s_f);
  return b;
}

}  // namespace epsm

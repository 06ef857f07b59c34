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

#include "epsm/geometry.hpp"
#include "epsm/scenario.hpp"

namespace epsm {

// A body extrapolated at constant velocity, in contact when its disk
// touches another's.
struct Disk {
  Vec2 position;
  Vec2 velocity;
  double radius = 0.0;
};

inline Disk disk_of(const ObjectState& o) { return {o.position, o.velocity, o.radius()}; }

struct EncounterResult {
  std::optional<double> ttc;  // first contact, none if never
  double ttce = 0.0;          // time of closest approach, >= 0
  double d_ttce = 0.0;        // surface clearance at closest approach, >= 0
  // Closest approach lies strictly in the future. False for diverging or
  // relatively static pairs, which report ttce = 0 and the current gap.
  bool closing = false;
};

// Closed-form disk encounter. Symmetric in its arguments.
EncounterResult encounter(const Disk& a, const Disk& b);
inline EncounterResult encounter(const ObjectState& a, const ObjectState& b) {
  return encounter(disk_of(a), disk_of(b));
}

// 1 / (1 + exp(k (ttc - t_falloff))); no contact maps to 0.
double criticality_from_ttc(std::optional<double> ttc, const MetricParams& params);

// max of the time sigmoid on ttce and the distance sigmoid on d_ttce.
double criticality_from_ttce(double ttce, double d_ttce, const MetricParams& params);

// C_TTCE of an encounter. Without a pending closest approach only the
// distance term applies.
double encounter_ttce_criticality(const EncounterResult& e, const MetricParams& params);

// max(C_TTC, C_TTCE) of an encounter.
double encounter_criticality(const EncounterResult& e, const MetricParams& params);

// Criticality of a vehicle behind the ego (rear half-plane of the ego
// heading), rated from the follower's perspective. 0 for anything ahead.
double rear_criticality(const ObjectState& ego, const ObjectState& obj,
                        const MetricParams& params);

// 1 inside the circular zone of radius 4 * VRU speed (strict), otherwise
// the TTCE rating of the encounter.
double vru_criticality(const ObjectState& ego, const ObjectState& vru,
                       const MetricParams& params);

// C_o: VRU zone rule for pedestrians and cyclists, otherwise
// max(C_TTC, C_TTCE, C_REAR).
double object_criticality(const ObjectState& ego, const ObjectState& obj,
                          const MetricParams& params);

}  // namespace epsm

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

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "epsm/scenario.hpp"

namespace epsm {

double logistic(double z);

// Pedestrian injury regressions; v_kmh is the vehicle speed in km/h and
// age is in years.
double pedestrian_fatality_prob(double v_kmh, double age);
double pedestrian_ksi_prob(double v_kmh, double age);

// i_min + (p - p_min)(i_max - i_min) / (p_max - p_min).
// Throws DomainError when p is outside [p_min, p_max].
double linear_map(double p, double p_min, double p_max, double i_min, double i_max);

// Severity of hitting a VRU at the given ego speed (m/s).
double vru_severity(double ego_speed_mps, double age);

enum class ImpactDirection { Front, Side, Rear };

std::string_view to_string(ImpactDirection d);

// From the bearing of obj in the ego frame: |b| <= 45 deg front,
// |b| >= 135 deg rear, side otherwise.
ImpactDirection impact_direction(const ObjectState& ego, const ObjectState& obj);

// Logistic regression over relative speed (km/h) and impact direction:
// z = c0 + cV V + cV2 V^2 + c_dir.
struct InjuryLogit {
  double intercept = 0.0;
  double v = 0.0;
  double v2 = 0.0;
  double front = 0.0;
  double side = 0.0;
  double rear = 0.0;

  double probability(double v_kmh, ImpactDirection dir) const;
};

struct VehicleSeverityModel {
  InjuryLogit fatal;
  InjuryLogit mais3;  // MAIS 3+
  InjuryLogit mais2;  // MAIS 2+
  std::string version;
  std::string provenance;
};

// Throws ModelError on a missing model, unknown term, non-finite or
// speed-decreasing coefficient, or a velocity unit other than km/h.
VehicleSeverityModel severity_model_from_json(const nlohmann::json& doc);
VehicleSeverityModel load_severity_model(const std::filesystem::path& path);
std::filesystem::path default_severity_model_path();

struct VehicleInjuryProbabilities {
  double fatal = 0.0;
  double mais3 = 0.0;
  double mais2 = 0.0;
};

VehicleInjuryProbabilities vehicle_injury_probabilities(double rel_speed_mps, ImpactDirection dir,
                                                        const VehicleSeverityModel& model);

// Band precedence fatal -> MAIS 3+ -> MAIS 2+, mapped onto [0.8, 1.0],
// [0.2, 0.8) and [0.0, 0.2]; 0 when every probability is below 0.5.
double vehicle_severity(double rel_speed_mps, ImpactDirection dir,
                        const VehicleSeverityModel& model);

// Dispatch on object class: VRUs use the ego speed and the VRU age (or the
// configured default), vehicles the relative speed and impact direction.
double severity(const ObjectState& ego, const ObjectState& obj,
                const VehicleSeverityModel& model, const MetricParams& params);

}  // namespace epsm

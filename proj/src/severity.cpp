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

#include "epsm/severity.hpp"

#include <cmath>

#include "epsm/errors.hpp"

namespace epsm {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double pedestrian_fatality_prob(double v_kmh, double age) {
  return logistic(-8.0941 + 0.0012 * v_kmh * v_kmh + 0.0525 * age);
}

double pedestrian_ksi_prob(double v_kmh, double age) {
  return logistic(-2.9893 + 0.0013 * v_kmh * v_kmh + 0.0286 * age);
}

double linear_map(double p, double p_min, double p_max, double i_min, double i_max) {
  if (!(p >= p_min && p <= p_max)) {
    throw DomainError("probability " + std::to_string(p) + " outside [" + std::to_string(p_min) +
                      ", " + std::to_string(p_max) + "]");
  }
  return i_min + (p - p_min) * (i_max - i_min) / (p_max - p_min);
}

namespace {

// Upper edge of the half-open serious band [0.4, 0.8) / [0.2, 0.8).
const double kBelowFatalBand = std::nextafter(0.8, 0.0);

}  // namespace

double vru_severity(double ego_speed_mps, double age) {
  const double v = ego_speed_mps * kMpsToKmh;
  const double p_k = pedestrian_fatality_prob(v, age);
  if (p_k >= 0.5) return linear_map(p_k, 0.5, 1.0, 0.8, 1.0);
  const double p_ksi = pedestrian_ksi_prob(v, age);
  if (p_ksi >= 0.5) return std::min(linear_map(p_ksi, 0.5, 1.0, 0.4, 0.8), kBelowFatalBand);
  return linear_map(p_ksi, 0.0, 0.5, 0.0, 0.4);
}

std::string_view to_string(ImpactDirection d) {
  switch (d) {
    case ImpactDirection::Front: return "front";
    case ImpactDirection::Side: return "side";
    case ImpactDirection::Rear: return "rear";
  }
  return "front";
}

ImpactDirection impact_direction(const ObjectState& ego, const ObjectState& obj) {
  const Vec2 rel = obj.position - ego.position;
  const Vec2 fwd = unit_from_heading(ego.heading);
  const double bearing = std::abs(std::atan2(cross(fwd, rel), dot(fwd, rel)));
  constexpr double quarter = std::numbers::pi / 4.0;
  if (bearing <= quarter) return ImpactDirection::Front;
  if (bearing >= 3.0 * quarter) return ImpactDirection::Rear;
  return ImpactDirection::Side;
}

double InjuryLogit::probability(double v_kmh, ImpactDirection dir) const {
  double z = intercept + v * v_kmh + v2 * v_kmh * v_kmh;
  switch (dir) {
    case ImpactDirection::Front: z += front; break;
    case ImpactDirection::Side: z += side; break;
    case ImpactDirection::Rear: z += rear; break;
  }
  return logistic(z);
}

namespace {

InjuryLogit read_logit(const nlohmann::json& models, const char* name) {
  if (!models.contains(name)) throw ModelError(std::string("missing model '") + name + "'");
  const auto& terms = models.at(name);
  if (!terms.is_array()) throw ModelError(std::string("model '") + name + "' must be a term list");
  InjuryLogit m;
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_number()) {
      throw ModelError(std::string("model '") + name + "': terms are [name, coefficient] pairs");
    }
    const auto term = t[0].get<std::string>();
    const double c = t[1].get<double>();
    if (!std::isfinite(c)) throw ModelError(std::string("model '") + name + "': non-finite coefficient");
    double* slot = term == "1"       ? &m.intercept
                   : term == "V"     ? &m.v
                   : term == "V2"    ? &m.v2
                   : term == "front" ? &m.front
                   : term == "side"  ? &m.side
                   : term == "rear"  ? &m.rear
                                     : nullptr;
    if (!slot) throw ModelError(std::string("model '") + name + "': unknown term '" + term + "'");
    *slot += c;
  }
  if (m.v < 0.0 || m.v2 < 0.0) {
    throw ModelError(std::string("model '") + name + "': speed coefficients must be non-negative");
  }
  return m;
}

}  // namespace

VehicleSeverityModel severity_model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ModelError("severity model document must be an object");
  if (doc.value("velocity_unit", std::string("km/h")) != "km/h") {
    throw ModelError("severity model velocity_unit must be km/h");
  }
  if (!doc.contains("models") || !doc.at("models").is_object()) {
    throw ModelError("severity model document has no 'models' object");
  }
  const auto& models = doc.at("models");
  VehicleSeverityModel m;
  m.fatal = read_logit(models, "fatal");
  m.mais3 = read_logit(models, "mais3plus");
  m.mais2 = read_logit(models, "mais2plus");
  m.version = doc.value("version", std::string());
  m.provenance = doc.value("provenance", std::string());
  return m;
}

VehicleSeverityModel load_severity_model(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = read_json_file(path);
  } catch (const std::exception& e) {
    throw ModelError(std::string("cannot read severity model: ") + e.what());
  }
  return severity_model_from_json(doc);
}

std::filesystem::path default_severity_model_path() {
  return std::filesystem::path(EPSM_DATA_DIR) / "severity_models.json";
}

VehicleInjuryProbabilities vehicle_injury_probabilities(double rel_speed_mps, ImpactDirection dir,
                                                        const VehicleSeverityModel& model) {
  const double v = rel_speed_mps * kMpsToKmh;
  return {model.fatal.probability(v, dir), model.mais3.probability(v, dir),
          model.mais2.probability(v, dir)};
}

double vehicle_severity(double rel_speed_mps, ImpactDirection dir,
                        const VehicleSeverityModel& model) {
  const auto p = vehicle_injury_probabilities(rel_speed_mps, dir, model);
  if (p.fatal >= 0.5) return linear_map(p.fatal, 0.5, 1.0, 0.8, 1.0);
  if (p.mais3 >= 0.5) return std::min(linear_map(p.mais3, 0.5, 1.0, 0.2, 0.8), kBelowFatalBand);
  if (p.mais2 >= 0.5) return linear_map(p.mais2, 0.5, 1.0, 0.0, 0.2);
  return 0.0;
}

double severity(const ObjectState& ego, const ObjectState& obj,
                const VehicleSeverityModel& model, const MetricParams& params) {
  if (is_vru(obj.cls)) return vru_severity(ego.speed(), obj.age.value_or(params.vru_default_age));
  return vehicle_severity(norm(obj.velocity - ego.velocity), impact_direction(ego, obj), model);
}

}  // namespace epsm

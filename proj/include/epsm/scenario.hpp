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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "epsm/geometry.hpp"

namespace epsm {

enum class ObjectClass { Car, Truck, Motorcycle, Cyclist, Pedestrian };

std::string_view to_string(ObjectClass c);
std::optional<ObjectClass> parse_object_class(std::string_view s);

// Pedestrians and cyclists; they take the zone criticality and the
// pedestrian injury regressions.
constexpr bool is_vru(ObjectClass c) {
  return c == ObjectClass::Pedestrian || c == ObjectClass::Cyclist;
}

struct ObjectState {
  std::string id;
  ObjectClass cls = ObjectClass::Car;
  Vec2 position;
  double heading = 0.0;  // radians, [-pi, pi)
  Vec2 velocity;         // m/s
  double length = 4.5;
  double width = 1.8;
  std::optional<double> age;  // years

  Box2D box() const { return {position, heading, length, width}; }
  double speed() const { return norm(velocity); }
  // Contact disk radius: half the footprint diagonal.
  double radius() const { return 0.5 * std::hypot(length, width); }

  bool operator==(const ObjectState&) const = default;
};

struct DetectedBox {
  ObjectClass cls = ObjectClass::Car;
  Vec2 position;
  double heading = 0.0;
  double length = 0.0;
  double width = 0.0;
  double confidence = 1.0;

  Box2D box() const { return {position, heading, length, width}; }
  bool operator==(const DetectedBox&) const = default;
};

struct DetectionSet {
  std::vector<DetectedBox> boxes;
  std::optional<Polyline> lane;  // detected ego-lane centerline

  bool operator==(const DetectionSet&) const = default;
};

enum class LaneRelation { SameDirection, Oncoming, Sidewalk };

std::string_view to_string(LaneRelation r);

struct LaneRecord {
  Polyline centerline;
  double width = 3.5;

  bool contains(Vec2 p) const {
    return distance_to_polyline(centerline, p) <= 0.5 * width;
  }
  bool operator==(const LaneRecord&) const = default;
};

struct AdjacentLane {
  LaneRecord lane;
  LaneRelation relation = LaneRelation::SameDirection;
  bool operator==(const AdjacentLane&) const = default;
};

struct LaneMap {
  LaneRecord ego_lane;
  std::vector<AdjacentLane> adjacent;
  double speed_limit = 13.89;  // m/s

  bool operator==(const LaneMap&) const = default;
};

// Metric parameters. Defaults are the experimental setup values
// (p = 5, IoU 0.7 / 0.5, 50 m detection distance, F_b = 1.1, k = 3,
// t_falloff = 2.5 s, d_falloff = 4.5 m).
struct MetricParams {
  double power_mean_p = 5.0;
  double iou_threshold_vehicle = 0.7;
  double iou_threshold_vru = 0.5;
  double detection_distance = 50.0;
  double bonus_factor = 1.1;
  double k_sigmoid = 3.0;
  double t_falloff = 2.5;
  double d_falloff = 4.5;
  double brake_decel = 5.0;
  double lane_match_threshold = 0.5;
  double vru_default_age = 30.0;

  double iou_threshold(ObjectClass c) const {
    return is_vru(c) ? iou_threshold_vru : iou_threshold_vehicle;
  }
  bool operator==(const MetricParams&) const = default;
};

struct ProbabilityBin {
  double upper = 0.0;  // bin covers (previous upper, upper] meters
  double probability = 0.0;
  bool operator==(const ProbabilityBin&) const = default;
};

struct SensorConfig {
  std::uint64_t seed = 0;
  double max_lane_distance = 50.0;
  double lane_noise_sigma = 0.05;
  std::vector<ProbabilityBin> detect_prob_curve = {
      {10.0, 0.98}, {20.0, 0.95}, {30.0, 0.90}, {40.0, 0.80}, {50.0, 0.65}};
  double bbox_size_jitter_sigma = 0.05;
  double heading_jitter_sigma = 2.0 * std::numbers::pi / 180.0;
  std::vector<std::string> force_miss_ids;

  bool operator==(const SensorConfig&) const = default;
};

struct Frame {
  double t = 0.0;
  ObjectState ego;
  std::vector<ObjectState> objects;
  DetectionSet detections;

  bool operator==(const Frame&) const = default;
};

struct Scenario {
  std::string id;
  std::vector<Frame> frames;
  LaneMap map;
  MetricParams params;
  std::optional<SensorConfig> sensor;
  std::optional<std::pair<std::string, std::string>> colliding_ids;

  bool operator==(const Scenario&) const = default;
};

struct Violation {
  std::optional<std::size_t> frame;
  std::string entity;
  std::string rule;
  std::string detail;
};

std::string to_string(const Violation& v);

// Total: reports every broken invariant, never throws.
std::vector<Violation> validate(const Scenario& scenario);

// Frames in timestamp order. Scenarios are stored sorted once validated, so
// this is a view over the stored vector.
std::span<const Frame> frames(const Scenario& scenario);

// JSON (de)serialization. Parse functions throw ParseError with a locus.
MetricParams params_from_json(const nlohmann::json& j, MetricParams base = {});
nlohmann::json params_to_json(const MetricParams& p);
SensorConfig sensor_from_json(const nlohmann::json& j);
nlohmann::json sensor_to_json(const SensorConfig& c);

Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& s);

// Parses text; a JSON syntax error reports "line N, column M".
Scenario parse_scenario(std::string_view text);
std::string serialize_scenario(const Scenario& s);

// parse_scenario + validate; ValidationError names each violated rule.
Scenario load_scenario(const std::filesystem::path& path);
Scenario load_scenario_text(std::string_view text);

std::string read_file(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace epsm

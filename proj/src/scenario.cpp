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

#include "epsm/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "epsm/errors.hpp"

namespace epsm {

using nlohmann::json;

std::string_view to_string(ObjectClass c) {
  switch (c) {
    case ObjectClass::Car: return "car";
    case ObjectClass::Truck: return "truck";
    case ObjectClass::Motorcycle: return "motorcycle";
    case ObjectClass::Cyclist: return "cyclist";
    case ObjectClass::Pedestrian: return "pedestrian";
  }
  return "car";
}

std::optional<ObjectClass> parse_object_class(std::string_view s) {
  for (auto c : {ObjectClass::Car, ObjectClass::Truck, ObjectClass::Motorcycle,
                 ObjectClass::Cyclist, ObjectClass::Pedestrian}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view to_string(LaneRelation r) {
  switch (r) {
    case LaneRelation::SameDirection: return "same_direction";
    case LaneRelation::Oncoming: return "oncoming";
    case LaneRelation::Sidewalk: return "sidewalk";
  }
  return "same_direction";
}

namespace {

std::optional<LaneRelation> parse_relation(std::string_view s) {
  for (auto r : {LaneRelation::SameDirection, LaneRelation::Oncoming,
                 LaneRelation::Sidewalk}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

// Typed accessors that report the JSON pointer of the offending field.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& msg) {
    throw ParseError(path.empty() ? "/" : path, msg);
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, _] : j_.items()) {
      bool known = false;
      for (auto key : keys) known = known || key == k;
      if (!known) fail(child(k), "unknown field");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  std::string child(std::string_view key) const { return path_ + "/" + std::string(key); }
  const json& raw(const std::string& key) const {
    if (!j_.contains(key)) fail(child(key), "missing required field");
    return j_.at(key);
  }

  double number(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_number()) fail(child(key), "expected a number");
    return v.get<double>();
  }
  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }
  std::string string(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_string()) fail(child(key), "expected a string");
    return v.get<std::string>();
  }
  const json& array(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_array()) fail(child(key), "expected an array");
    return v;
  }

 private:
  const json& j_;
  std::string path_;
};

Vec2 read_vec2(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    Reader::fail(path, "expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Polyline read_polyline(const json& v, const std::string& path) {
  if (!v.is_array()) Reader::fail(path, "expected an array of [x, y]");
  Polyline out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(read_vec2(v[i], path + "/" + std::to_string(i)));
  }
  return out;
}

json vec2_json(Vec2 v) { return json::array({v.x, v.y}); }

json polyline_json(const Polyline& line) {
  json arr = json::array();
  for (const auto& p : line) arr.push_back(vec2_json(p));
  return arr;
}

ObjectClass read_class(const Reader& r, const std::string& key) {
  const std::string s = r.string(key);
  auto c = parse_object_class(s);
  if (!c) Reader::fail(r.child(key), "unknown object class '" + s + "'");
  return *c;
}

ObjectState read_object(const json& j, const std::string& path) {
  Reader r(j, path);
  r.allow_only({"id", "class", "position_m", "heading_rad", "velocity_mps",
                "length_m", "width_m", "age_years"});
  ObjectState o;
  o.id = r.string("id");
  o.cls = read_class(r, "class");
  o.position = read_vec2(r.raw("position_m"), r.child("position_m"));
  o.heading = r.number("heading_rad");
  o.velocity = read_vec2(r.raw("velocity_mps"), r.child("velocity_mps"));
  o.length = r.number("length_m");
  o.width = r.number("width_m");
  if (r.has("age_years")) o.age = r.number("age_years");
  return o;
}

json object_json(const ObjectState& o) {
  json j = {{"id", o.id},
            {"class", to_string(o.cls)},
            {"position_m", vec2_json(o.position)},
            {"heading_rad", o.heading},
            {"velocity_mps", vec2_json(o.velocity)},
            {"length_m", o.length},
            {"width_m", o.width}};
  if (o.age) j["age_years"] = *o.age;
  return j;
}

DetectedBox read_box(const json& j, const std::string& path) {
  Reader r(j, path);
  r.allow_only({"class", "position_m", "heading_rad", "length_m", "width_m", "confidence"});
  DetectedBox b;
  b.cls = read_class(r, "class");
  b.position = read_vec2(r.raw("position_m"), r.child("position_m"));
  b.heading = r.number("heading_rad");
  b.length = r.number("length_m");
  b.width = r.number("width_m");
  b.confidence = r.number_or("confidence", 1.0);
  return b;
}

json box_json(const DetectedBox& b) {
  return {{"class", to_string(b.cls)},
          {"position_m", vec2_json(b.position)},
          {"heading_rad", b.heading},
          {"length_m", b.length},
          {"width_m", b.width},
          {"confidence", b.confidence}};
}

LaneRecord read_lane(const Reader& r) {
  LaneRecord lane;
  lane.centerline = read_polyline(r.raw("centerline_m"), r.child("centerline_m"));
  lane.width = r.number("width_m");
  return lane;
}

Frame read_frame(const json& j, const std::string& path) {
  Reader r(j, path);
  r.allow_only({"t_s", "ego", "objects", "detections"});
  Frame f;
  f.t = r.number("t_s");
  f.ego = read_object(r.raw("ego"), r.child("ego"));
  if (r.has("objects")) {
    const json& objs = r.array("objects");
    for (std::size_t i = 0; i < objs.size(); ++i) {
      f.objects.push_back(read_object(objs[i], r.child("objects") + "/" + std::to_string(i)));
    }
  }
  if (r.has("detections")) {
    Reader d(r.raw("detections"), r.child("detections"));
    d.allow_only({"boxes", "lane_pts_m"});
    if (d.has("boxes")) {
      const json& boxes = d.array("boxes");
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        f.detections.boxes.push_back(read_box(boxes[i], d.child("boxes") + "/" + std::to_string(i)));
      }
    }
    if (d.has("lane_pts_m")) {
      f.detections.lane = read_polyline(d.raw("lane_pts_m"), d.child("lane_pts_m"));
    }
  }
  return f;
}

json frame_json(const Frame& f) {
  json objs = json::array();
  for (const auto& o : f.objects) objs.push_back(object_json(o));
  json boxes = json::array();
  for (const auto& b : f.detections.boxes) boxes.push_back(box_json(b));
  json det = {{"boxes", boxes}};
  if (f.detections.lane) det["lane_pts_m"] = polyline_json(*f.detections.lane);
  return {{"t_s", f.t}, {"ego", object_json(f.ego)}, {"objects", objs}, {"detections", det}};
}

}  // namespace

MetricParams params_from_json(const json& j, MetricParams p) {
  Reader r(j, "/params");
  r.allow_only({"power_mean_p", "iou_threshold_vehicle", "iou_threshold_vru",
                "detection_distance_m", "bonus_factor", "k_sigmoid_per_s",
                "t_falloff_s", "d_falloff_m", "brake_decel_mps2",
                "lane_match_threshold_m", "vru_default_age_years"});
  p.power_mean_p = r.number_or("power_mean_p", p.power_mean_p);
  p.iou_threshold_vehicle = r.number_or("iou_threshold_vehicle", p.iou_threshold_vehicle);
  p.iou_threshold_vru = r.number_or("iou_threshold_vru", p.iou_threshold_vru);
  p.detection_distance = r.number_or("detection_distance_m", p.detection_distance);
  p.bonus_factor = r.number_or("bonus_factor", p.bonus_factor);
  p.k_sigmoid = r.number_or("k_sigmoid_per_s", p.k_sigmoid);
  p.t_falloff = r.number_or("t_falloff_s", p.t_falloff);
  p.d_falloff = r.number_or("d_falloff_m", p.d_falloff);
  p.brake_decel = r.number_or("brake_decel_mps2", p.brake_decel);
  p.lane_match_threshold = r.number_or("lane_match_threshold_m", p.lane_match_threshold);
  p.vru_default_age = r.number_or("vru_default_age_years", p.vru_default_age);
  return p;
}

json params_to_json(const MetricParams& p) {
  return {{"power_mean_p", p.power_mean_p},
          {"iou_threshold_vehicle", p.iou_threshold_vehicle},
          {"iou_threshold_vru", p.iou_threshold_vru},
          {"detection_distance_m", p.detection_distance},
          {"bonus_factor", p.bonus_factor},
          {"k_sigmoid_per_s", p.k_sigmoid},
          {"t_falloff_s", p.t_falloff},
          {"d_falloff_m", p.d_falloff},
          {"brake_decel_mps2", p.brake_decel},
          {"lane_match_threshold_m", p.lane_match_threshold},
          {"vru_default_age_years", p.vru_default_age}};
}

SensorConfig sensor_from_json(const json& j) {
  Reader r(j, "/sensor");
  r.allow_only({"seed", "max_lane_distance_m", "lane_noise_sigma_m", "detect_prob_curve",
                "bbox_size_jitter_sigma", "heading_jitter_sigma_rad", "force_miss_ids"});
  SensorConfig c;
  if (r.has("seed")) {
    const json& s = r.raw("seed");
    if (!s.is_number_unsigned()) Reader::fail(r.child("seed"), "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  c.max_lane_distance = r.number_or("max_lane_distance_m", c.max_lane_distance);
  c.lane_noise_sigma = r.number_or("lane_noise_sigma_m", c.lane_noise_sigma);
  c.bbox_size_jitter_sigma = r.number_or("bbox_size_jitter_sigma", c.bbox_size_jitter_sigma);
  c.heading_jitter_sigma = r.number_or("heading_jitter_sigma_rad", c.heading_jitter_sigma);
  if (r.has("detect_prob_curve")) {
    const json& curve = r.array("detect_prob_curve");
    c.detect_prob_curve.clear();
    for (std::size_t i = 0; i < curve.size(); ++i) {
      Reader b(curve[i], r.child("detect_prob_curve") + "/" + std::to_string(i));
      b.allow_only({"upper_m", "p"});
      c.detect_prob_curve.push_back({b.number("upper_m"), b.number("p")});
    }
  }
  if (r.has("force_miss_ids")) {
    const json& ids = r.array("force_miss_ids");
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!ids[i].is_string()) {
        Reader::fail(r.child("force_miss_ids") + "/" + std::to_string(i), "expected a string");
      }
      c.force_miss_ids.push_back(ids[i].get<std::string>());
    }
  }
  return c;
}

json sensor_to_json(const SensorConfig& c) {
  json curve = json::array();
  for (const auto& b : c.detect_prob_curve) curve.push_back({{"upper_m", b.upper}, {"p", b.probability}});
  return {{"seed", c.seed},
          {"max_lane_distance_m", c.max_lane_distance},
          {"lane_noise_sigma_m", c.lane_noise_sigma},
          {"detect_prob_curve", curve},
          {"bbox_size_jitter_sigma", c.bbox_size_jitter_sigma},
          {"heading_jitter_sigma_rad", c.heading_jitter_sigma},
          {"force_miss_ids", c.force_miss_ids}};
}

Scenario scenario_from_json(const json& doc) {
  Reader r(doc, "");
  r.allow_only({"id", "description", "params", "sensor", "colliding_ids", "map", "frames"});
  Scenario s;
  s.id = r.string("id");
  if (r.has("params")) s.params = params_from_json(r.raw("params"));
  if (r.has("sensor")) s.sensor = sensor_from_json(r.raw("sensor"));
  if (r.has("colliding_ids")) {
    const json& ids = r.array("colliding_ids");
    if (ids.size() != 2 || !ids[0].is_string() || !ids[1].is_string()) {
      Reader::fail(r.child("colliding_ids"), "expected two object ids");
    }
    s.colliding_ids = std::pair{ids[0].get<std::string>(), ids[1].get<std::string>()};
  }

  Reader m(r.raw("map"), "/map");
  m.allow_only({"ego_lane", "adjacent", "speed_limit_mps"});
  {
    Reader ego(m.raw("ego_lane"), "/map/ego_lane");
    ego.allow_only({"centerline_m", "width_m"});
    s.map.ego_lane = read_lane(ego);
  }
  if (m.has("adjacent")) {
    const json& adj = m.array("adjacent");
    for (std::size_t i = 0; i < adj.size(); ++i) {
      Reader a(adj[i], "/map/adjacent/" + std::to_string(i));
      a.allow_only({"relation", "centerline_m", "width_m"});
      const std::string rel = a.string("relation");
      auto parsed = parse_relation(rel);
      if (!parsed) Reader::fail(a.child("relation"), "unknown lane relation '" + rel + "'");
      s.map.adjacent.push_back({read_lane(a), *parsed});
    }
  }
  s.map.speed_limit = m.number("speed_limit_mps");

  const json& frames_json = r.array("frames");
  s.frames.reserve(frames_json.size());
  for (std::size_t i = 0; i < frames_json.size(); ++i) {
    s.frames.push_back(read_frame(frames_json[i], "/frames/" + std::to_string(i)));
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["id"] = s.id;
  if (s.colliding_ids) doc["colliding_ids"] = {s.colliding_ids->first, s.colliding_ids->second};
  doc["params"] = params_to_json(s.params);
  if (s.sensor) doc["sensor"] = sensor_to_json(*s.sensor);
  json adj = json::array();
  for (const auto& a : s.map.adjacent) {
    adj.push_back({{"relation", to_string(a.relation)},
                   {"centerline_m", polyline_json(a.lane.centerline)},
                   {"width_m", a.lane.width}});
  }
  doc["map"] = {{"ego_lane", {{"centerline_m", polyline_json(s.map.ego_lane.centerline)},
                              {"width_m", s.map.ego_lane.width}}},
                {"adjacent", adj},
                {"speed_limit_mps", s.map.speed_limit}};
  json frames_json = json::array();
  for (const auto& f : s.frames) frames_json.push_back(frame_json(f));
  doc["frames"] = frames_json;
  return doc;
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Convert the byte offset into a line/column locus.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col),
                     "malformed JSON");
  }
  try {
    return scenario_from_json(doc);
  } catch (const json::exception& e) {
    throw ParseError("", e.what());
  }
}

std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

std::string to_string(const Violation& v) {
  std::ostringstream out;
  out << v.rule;
  if (v.frame) out << " (frame " << *v.frame;
  if (!v.entity.empty()) out << (v.frame ? ", " : " (") << v.entity;
  if (v.frame || !v.entity.empty()) out << ")";
  if (!v.detail.empty()) out << ": " << v.detail;
  return out.str();
}

namespace {

class Validator {
 public:
  std::vector<Violation> out;

  void add(std::optional<std::size_t> frame, std::string entity, std::string rule,
           std::string detail = {}) {
    out.push_back({frame, std::move(entity), std::move(rule), std::move(detail)});
  }

  void finite(std::optional<std::size_t> frame, const std::string& entity, double v,
              const char* what) {
    if (!std::isfinite(v)) add(frame, entity, "finite", std::string(what) + " is not finite");
  }

  void object(std::size_t fi, const ObjectState& o) {
    for (double v : {o.position.x, o.position.y, o.velocity.x, o.velocity.y, o.heading}) {
      finite(fi, o.id, v, "kinematic value");
    }
    if (!(o.length > 0.0) || !(o.width > 0.0)) add(fi, o.id, "positive_dims");
    if (!(o.heading >= -std::numbers::pi && o.heading < std::numbers::pi)) {
      add(fi, o.id, "heading_range");
    }
    if (o.age && !(*o.age >= 0.0 && *o.age <= 120.0)) {
      add(fi, o.id, "age_range", "age " + std::to_string(*o.age));
    }
  }

  void lane(std::optional<std::size_t> fi, const std::string& name, const LaneRecord& l) {
    if (!(l.width > 0.0)) add(fi, name, "lane_width");
    if (l.centerline.size() < 2) add(fi, name, "centerline_points");
    for (const auto& p : l.centerline) {
      finite(fi, name, p.x, "point");
      finite(fi, name, p.y, "point");
    }
  }
};

}  // namespace

std::vector<Violation> validate(const Scenario& s) {
  Validator v;
  const auto& p = s.params;
  if (!(p.power_mean_p >= 1.0)) v.add(std::nullopt, "params", "power_mean_p");
  for (double th : {p.iou_threshold_vehicle, p.iou_threshold_vru}) {
    if (!(th > 0.0 && th <= 1.0)) v.add(std::nullopt, "params", "iou_threshold");
  }
  for (double pos : {p.detection_distance, p.bonus_factor, p.k_sigmoid, p.t_falloff,
                     p.d_falloff, p.brake_decel, p.lane_match_threshold}) {
    if (!(pos > 0.0) || !std::isfinite(pos)) v.add(std::nullopt, "params", "positive_param");
  }
  if (!(p.vru_default_age >= 0.0 && p.vru_default_age <= 120.0)) {
    v.add(std::nullopt, "params", "age_range");
  }

  v.lane(std::nullopt, "ego_lane", s.map.ego_lane);
  for (std::size_t i = 0; i < s.map.adjacent.size(); ++i) {
    v.lane(std::nullopt, "adjacent/" + std::to_string(i), s.map.adjacent[i].lane);
  }
  if (!(s.map.speed_limit >= 0.0) || !std::isfinite(s.map.speed_limit)) {
    v.add(std::nullopt, "map", "speed_limit");
  }

  if (s.sensor) {
    const auto& c = *s.sensor;
    double prev = 0.0;
    for (const auto& b : c.detect_prob_curve) {
      if (!(b.probability >= 0.0 && b.probability <= 1.0)) v.add(std::nullopt, "sensor", "probability_range");
      if (!(b.upper > prev)) v.add(std::nullopt, "sensor", "bins_increasing");
      prev = b.upper;
    }
    if (!(c.lane_noise_sigma >= 0.0) || !(c.bbox_size_jitter_sigma >= 0.0) ||
        !(c.heading_jitter_sigma >= 0.0)) {
      v.add(std::nullopt, "sensor", "sigma_nonnegative");
    }
    if (!(c.max_lane_distance > 0.0)) v.add(std::nullopt, "sensor", "positive_param");
  }

  std::set<std::string> known_ids;
  std::optional<double> first_dt;
  for (std::size_t fi = 0; fi < s.frames.size(); ++fi) {
    const Frame& f = s.frames[fi];
    v.finite(fi, "frame", f.t, "t");
    if (f.t < 0.0) v.add(fi, "frame", "negative_time");
    if (fi > 0) {
      const double dt = f.t - s.frames[fi - 1].t;
      if (!(dt > 0.0)) {
        v.add(fi, "frame", "monotone_time");
      } else if (!first_dt) {
        first_dt = dt;
      } else if (std::abs(dt - *first_dt) > 1e-9) {
        v.add(fi, "frame", "constant_frame_rate");
      }
    }
    v.object(fi, f.ego);
    known_ids.insert(f.ego.id);
    std::set<std::string> seen;
    for (const auto& o : f.objects) {
      v.object(fi, o);
      known_ids.insert(o.id);
      if (o.id == f.ego.id) v.add(fi, o.id, "ego_in_objects");
      if (!seen.insert(o.id).second) v.add(fi, o.id, "duplicate_id");
    }
    for (std::size_t bi = 0; bi < f.detections.boxes.size(); ++bi) {
      const auto& b = f.detections.boxes[bi];
      const std::string name = "detection/" + std::to_string(bi);
      if (!(b.confidence >= 0.0 && b.confidence <= 1.0)) v.add(fi, name, "confidence_range");
      if (!(b.length > 0.0) || !(b.width > 0.0)) v.add(fi, name, "positive_dims");
      for (double x : {b.position.x, b.position.y, b.heading}) v.finite(fi, name, x, "box value");
    }
    if (f.detections.lane) {
      const auto& lane = *f.detections.lane;
      bool ok = lane.size() >= 2;
      for (std::size_t i = 1; ok && i < lane.size(); ++i) ok = norm(lane[i] - lane[i - 1]) > 0.0;
      for (const auto& q : lane) ok = ok && std::isfinite(q.x) && std::isfinite(q.y);
      if (!ok) v.add(fi, "detected_lane", "lane_polyline");
    }
  }

  auto require_known = [&](const std::string& id, const char* where) {
    if (!known_ids.count(id)) v.add(std::nullopt, id, "unknown_object", where);
  };
  if (s.colliding_ids) {
    require_known(s.colliding_ids->first, "colliding_ids");
    require_known(s.colliding_ids->second, "colliding_ids");
  }
  if (s.sensor) {
    for (const auto& id : s.sensor->force_miss_ids) require_known(id, "force_miss_ids");
  }
  return v.out;
}

std::span<const Frame> frames(const Scenario& scenario) { return scenario.frames; }

Scenario load_scenario_text(std::string_view text) {
  Scenario s = parse_scenario(text);
  auto violations = validate(s);
  if (!violations.empty()) {
    std::string msg = "scenario '" + s.id + "' is invalid:";
    for (const auto& v : violations) msg += "\n  " + to_string(v);
    throw ValidationError(msg);
  }
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return load_scenario_text(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + (e.locus().empty() ? "" : ": " + e.locus()), e.message());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace epsm

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

#include "epsm/synthetic.hpp"

#include <cmath>
#include <string>

#include "epsm/sensor_sim.hpp"

namespace epsm {

Polyline offset_polyline(std::span<const Vec2> line, double offset) {
  Polyline out;
  out.reserve(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    const Vec2 a = line[i == 0 ? 0 : i - 1];
    const Vec2 b = line[i + 1 < line.size() ? i + 1 : i];
    const Vec2 d = b - a;
    const double n = norm(d);
    const Vec2 left = n > 0.0 ? Vec2{-d.y / n, d.x / n} : Vec2{0.0, 1.0};
    out.push_back(line[i] + left * offset);
  }
  return out;
}

namespace {

constexpr double kLaneWidth = 3.5;
constexpr double kSidewalkWidth = 2.0;
constexpr double kRoadLength = 320.0;

Polyline make_centerline(RandomStream& rng) {
  // Straight roads or a constant-curvature arc of radius 150-400 m.
  const bool curved = rng.uniform() < 0.5;
  const double radius = rng.uniform(150.0, 400.0) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
  Polyline line;
  for (double s = 0.0; s <= kRoadLength + 1e-9; s += 2.0) {
    if (!curved) {
      line.push_back({s, 0.0});
    } else {
      const double phi = s / radius;
      line.push_back({radius * std::sin(phi), radius * (1.0 - std::cos(phi))});
    }
  }
  return line;
}

// Kinematic state of a body moving along `line` at signed speed v.
ObjectState along(const Polyline& line, std::string id, ObjectClass cls, double s, double v,
                  double length, double width) {
  ObjectState o;
  o.id = std::move(id);
  o.cls = cls;
  o.position = point_at(line, s);
  const Vec2 n = normal_at(line, s);
  Vec2 tangent{n.y, -n.x};
  if (v < 0.0) tangent = tangent * -1.0;
  o.heading = wrap_angle(std::atan2(tangent.y, tangent.x));
  o.velocity = tangent * std::abs(v);
  o.length = length;
  o.width = width;
  return o;
}

struct Actor {
  std::string id;
  ObjectClass cls;
  const Polyline* line;
  double s0;
  double v;  // signed, along the line's direction
  double length;
  double width;
  std::optional<double> age;
};

}  // namespace

Scenario make_synthetic_scenario(std::uint64_t seed, std::size_t index,
                                 const SyntheticOptions& opts) {
  Scenario sc;
  sc.id = "synthetic_" + std::to_string(index);
  RandomStream rng = rng_stream_for(sc.id, 0, Channel::Synthetic, seed);

  const Polyline center = make_centerline(rng);
  sc.map.ego_lane = {center, kLaneWidth};
  sc.map.adjacent.push_back({{offset_polyline(center, kLaneWidth), kLaneWidth}, LaneRelation::Oncoming});
  sc.map.adjacent.push_back(
      {{offset_polyline(center, -0.5 * (kLaneWidth + kSidewalkWidth)), kSidewalkWidth},
       LaneRelation::Sidewalk});
  sc.map.speed_limit = 13.89;

  const Polyline& oncoming = sc.map.adjacent[0].lane.centerline;
  const Polyline& sidewalk = sc.map.adjacent[1].lane.centerline;

  const double ego_v = rng.uniform(8.0, 14.0);
  const double ego_s0 = 30.0;

  std::vector<Actor> actors;
  const int leads = 1 + static_cast<int>(rng.uniform() * 2.0);
  double gap = rng.uniform(12.0, 25.0);
  for (int i = 0; i < leads; ++i) {
    const bool truck = rng.uniform() < 0.2;
    actors.push_back({"lead_" + std::to_string(i), truck ? ObjectClass::Truck : ObjectClass::Car, &center,
                      ego_s0 + gap, ego_v * rng.uniform(0.6, 1.05), truck ? 8.0 : 4.5,
                      truck ? 2.5 : 1.8, std::nullopt});
    gap += rng.uniform(12.0, 25.0);
  }
  actors.push_back({"follower", ObjectClass::Car, &center, ego_s0 - rng.uniform(10.0, 25.0),
                    ego_v * rng.uniform(0.9, 1.2), 4.5, 1.8, std::nullopt});
  const int oncomers = 1 + static_cast<int>(rng.uniform() * 3.0);
  for (int i = 0; i < oncomers; ++i) {
    const bool moto = rng.uniform() < 0.25;
    actors.push_back({"oncoming_" + std::to_string(i), moto ? ObjectClass::Motorcycle : ObjectClass::Car,
                      &oncoming, ego_s0 + rng.uniform(30.0, 110.0), -rng.uniform(8.0, 14.0),
                      moto ? 2.2 : 4.5, moto ? 0.9 : 1.8, std::nullopt});
  }
  const int walkers = static_cast<int>(rng.uniform() * 4.0);
  for (int i = 0; i < walkers; ++i) {
    const bool cyclist = rng.uniform() < 0.25;
    const double speed = cyclist ? rng.uniform(3.0, 6.0) : rng.uniform(0.8, 1.6);
    std::optional<double> age;
    if (rng.uniform() < 0.8) age = std::round(rng.uniform(8.0, 85.0));
    actors.push_back({(cyclist ? "cyclist_" : "pedestrian_") + std::to_string(i),
                      cyclist ? ObjectClass::Cyclist : ObjectClass::Pedestrian, &sidewalk,
                      ego_s0 + rng.uniform(-10.0, 60.0), speed * (rng.uniform() < 0.5 ? 1.0 : -1.0),
                      cyclist ? 1.8 : 0.5, cyclist ? 0.6 : 0.5, age});
  }

  sc.frames.reserve(opts.frames);
  for (std::size_t fi = 0; fi < opts.frames; ++fi) {
    const double t = static_cast<double>(fi) * opts.frame_dt;
    Frame f;
    f.t = t;
    f.ego = along(center, "ego", ObjectClass::Car, ego_s0 + ego_v * t, ego_v, 4.6, 1.9);
    for (const auto& a : actors) {
      auto o = along(*a.line, a.id, a.cls, a.s0 + a.v * t, a.v, a.length, a.width);
      o.age = a.age;
      f.objects.push_back(std::move(o));
    }
    sc.frames.push_back(std::move(f));
  }

  SensorConfig sensor;
  sensor.seed = seed;
  sc.sensor = sensor;
  return sc;
}

std::vector<Scenario> make_synthetic_corpus(std::uint64_t seed, std::size_t count,
                                            const SyntheticOptions& opts) {
  std::vector<Scenario> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(make_synthetic_scenario(seed, i, opts));
  return out;
}

}  // namespace epsm

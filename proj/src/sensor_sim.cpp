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

#include "epsm/sensor_sim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "epsm/errors.hpp"

namespace epsm {

double RandomStream::normal() {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

RandomStream rng_stream_for(std::string_view scenario_id, std::uint64_t frame_index,
                            Channel channel, std::uint64_t seed) {
  std::uint64_t key = splitmix64(seed);
  key = splitmix64(key ^ fnv1a64(scenario_id));
  key = splitmix64(key ^ frame_index);
  key = splitmix64(key ^ static_cast<std::uint64_t>(channel));
  return RandomStream(key);
}

double detection_probability(std::span<const ProbabilityBin> curve, double distance) {
  for (const auto& bin : curve) {
    if (distance <= bin.upper) return bin.probability;
  }
  return 0.0;
}

namespace {

double distance_to_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  const double u = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + d * u));
}

}  // namespace

std::optional<Polyline> simulate_lane_detection(const LaneMap& map, const ObjectState& ego,
                                                const SensorConfig& cfg, RandomStream& rng) {
  const auto& lane = map.ego_lane;
  const Projection proj = project(lane.centerline, ego.position);
  if (proj.distance > 0.5 * lane.width) {
    throw OffMapError("ego '" + ego.id + "' is " + std::to_string(proj.distance) +
                      " m from its lane centerline");
  }
  constexpr double spacing = 0.5;
  const double s_end = std::min(proj.s + cfg.max_lane_distance, polyline_length(lane.centerline));
  const Polyline stations = resample(lane.centerline, spacing, proj.s, s_end);

  // A station is visible while the sight line from the ego stays within
  // half a lane width of every nearer station.
  const double half = 0.5 * lane.width;
  std::size_t visible = 0;
  for (std::size_t k = 0; k < stations.size(); ++k) {
    bool clear = true;
    for (std::size_t j = 0; j < k && clear; ++j) {
      clear = distance_to_segment(stations[j], ego.position, stations[k]) <= half;
    }
    if (!clear) break;
    visible = k + 1;
  }
  if (visible < 2) return std::nullopt;

  Polyline out;
  out.reserve(visible);
  for (std::size_t k = 0; k < visible; ++k) {
    const double s = proj.s + static_cast<double>(k) * spacing;
    const double offset = cfg.lane_noise_sigma * rng.normal();
    out.push_back(stations[k] + normal_at(lane.centerline, s) * offset);
  }
  return out;
}

std::vector<DetectedBox> simulate_object_detection(std::span<const ObjectState> gt,
                                                   const ObjectState& ego, const SensorConfig& cfg,
                                                   RandomStream& rng) {
  std::vector<DetectedBox> out;
  for (const auto& o : gt) {
    const double u = rng.uniform();
    const double n_len = rng.normal();
    const double n_wid = rng.normal();
    const double n_head = rng.normal();
    const bool forced = std::find(cfg.force_miss_ids.begin(), cfg.force_miss_ids.end(), o.id) !=
                        cfg.force_miss_ids.end();
    const double p = detection_probability(cfg.detect_prob_curve, norm(o.position - ego.position));
    if (forced || !(u < p)) continue;
    DetectedBox b;
    b.cls = o.cls;
    b.position = o.position;
    b.length = std::max(1e-3, o.length * (1.0 + cfg.bbox_size_jitter_sigma * n_len));
    b.width = std::max(1e-3, o.width * (1.0 + cfg.bbox_size_jitter_sigma * n_wid));
    b.heading = wrap_angle(o.heading + cfg.heading_jitter_sigma * n_head);
    b.confidence = p;
    out.push_back(b);
  }
  return out;
}

DetectionSet simulate_frame(const Scenario& scenario, std::size_t frame_index,
                            const SensorConfig& cfg) {
  const Frame& f = scenario.frames.at(frame_index);
  DetectionSet d;
  auto lane_rng = rng_stream_for(scenario.id, frame_index, Channel::Lane, cfg.seed);
  d.lane = simulate_lane_detection(scenario.map, f.ego, cfg, lane_rng);
  auto obj_rng = rng_stream_for(scenario.id, frame_index, Channel::Object, cfg.seed);
  d.boxes = simulate_object_detection(f.objects, f.ego, cfg, obj_rng);
  return d;
}

Scenario simulate_scenario(const Scenario& scenario, const SensorConfig& cfg, Execution exec) {
  Scenario out = scenario;
  const auto n = static_cast<std::ptrdiff_t>(out.frames.size());
  if (exec.is_serial()) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out.frames[static_cast<std::size_t>(i)].detections =
          simulate_frame(scenario, static_cast<std::size_t>(i), cfg);
    }
    return out;
  }
  std::vector<std::exception_ptr> errors(out.frames.size());
#pragma omp parallel for schedule(dynamic) num_threads(exec.threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out.frames[idx].detections = simulate_frame(scenario, idx, cfg);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace epsm

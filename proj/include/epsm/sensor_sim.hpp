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
#include <optional>
#include <random>
#include <span>
#include <string_view>

#include "epsm/execution.hpp"
#include "epsm/scenario.hpp"

namespace epsm {

enum class Channel : std::uint64_t { Lane = 1, Object = 2, Synthetic = 3 };

// Deterministic random stream. Draws depend only on the key it was created
// from, so frames can be simulated in any order or in parallel.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : engine_(key) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller; consumes two uniforms.
  double normal();
  std::uint64_t next_u64() { return engine_(); }

 private:
  // mt19937_64's output sequence is fixed by the standard; distributions
  // are not, so they are implemented here.
  std::mt19937_64 engine_;
};

std::uint64_t fnv1a64(std::string_view s);
std::uint64_t splitmix64(std::uint64_t x);

RandomStream rng_stream_for(std::string_view scenario_id, std::uint64_t frame_index,
                            Channel channel, std::uint64_t seed);

// Piecewise-constant lookup; 0 beyond the last bin.
double detection_probability(std::span<const ProbabilityBin> curve, double distance);

// Ego-lane centerline ahead of the ego, sampled every 0.5 m up to the
// configured range or the first station hidden by the lane's curvature,
// each point shifted along the lane normal by N(0, sigma^2). Returns no
// lane when fewer than two stations are visible. Throws OffMapError when
// the ego is not on its lane.
std::optional<Polyline> simulate_lane_detection(const LaneMap& map, const ObjectState& ego,
                                                const SensorConfig& cfg, RandomStream& rng);

// Distance-dependent detection with size and heading jitter. Every object
// consumes the same number of draws whether or not it is detected.
std::vector<DetectedBox> simulate_object_detection(std::span<const ObjectState> gt,
                                                   const ObjectState& ego, const SensorConfig& cfg,
                                                   RandomStream& rng);

// Replaces the detections of every frame.
DetectionSet simulate_frame(const Scenario& scenario, std::size_t frame_index,
                            const SensorConfig& cfg);
Scenario simulate_scenario(const Scenario& scenario, const SensorConfig& cfg,
                           Execution exec = Execution::serial());

}  // namespace epsm

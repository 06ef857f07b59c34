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
#include <vector>

#include "epsm/scenario.hpp"

namespace epsm {

struct SyntheticOptions {
  std::size_t frames = 30;
  double frame_dt = 0.1;  // s
};

// Seeded two-lane road with sidewalk, lead and oncoming traffic and
// pedestrians. Carries a default sensor section keyed to `seed`; frames
// have no detections until simulated.
Scenario make_synthetic_scenario(std::uint64_t seed, std::size_t index,
                                 const SyntheticOptions& opts = {});

std::vector<Scenario> make_synthetic_corpus(std::uint64_t seed, std::size_t count,
                                            const SyntheticOptions& opts = {});

// Polyline shifted by `offset` along its left normal.
Polyline offset_polyline(std::span<const Vec2> line, double offset);

}  // namespace epsm

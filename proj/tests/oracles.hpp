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

// Independent reference computations used by unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "epsm/criticality.hpp"
#include "epsm/perf_metrics.hpp"

namespace epsm::oracle {

struct SteppedEncounter {
  std::optional<double> ttc;
  double ttce = 0.0;
  double d_ttce = 0.0;
};

// Fixed-step scan of the gap between two constant-velocity disks.
inline SteppedEncounter step_encounter(const Disk& a, const Disk& b, double dt = 1e-3,
                                       double horizon = 20.0) {
  SteppedEncounter r;
  const double rsum = a.radius + b.radius;
  double best = std::numeric_limits<double>::infinity();
  const auto steps = static_cast<long>(std::llround(horizon / dt));
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double dx = (b.position.x + b.velocity.x * t) - (a.position.x + a.velocity.x * t);
    const double dy = (b.position.y + b.velocity.y * t) - (a.position.y + a.velocity.y * t);
    const double d = std::hypot(dx, dy);
    if (!r.ttc && d <= rsum) r.ttc = t;
    if (d < best) {
      best = d;
      r.ttce = t;
    }
  }
  r.d_ttce = std::max(0.0, best - rsum);
  return r;
}

struct KinematicPair {
  Disk a;
  Disk b;
};

// Random pairs whose interesting times fall well inside the horizon.
inline std::vector<KinematicPair> random_pairs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-40.0, 40.0), vel(-15.0, 15.0), rad(0.3, 2.5);
  std::vector<KinematicPair> out;
  while (out.size() < n) {
    KinematicPair p{{{pos(rng), pos(rng)}, {vel(rng), vel(rng)}, rad(rng)},
                    {{pos(rng), pos(rng)}, {vel(rng), vel(rng)}, rad(rng)}};
    const Vec2 dp = p.b.position - p.a.position;
    const Vec2 dv = p.b.velocity - p.a.velocity;
    const double a = dot(dv, dv);
    if (a < 1e-2) continue;
    const double t_star = -dot(dp, dv) / a;
    if (t_star > 18.0) continue;
    out.push_back(p);
  }
  return out;
}

// Area under the right-continuous interpolated precision staircase, by
// summing rectangles between consecutive distinct recall values.
inline double staircase_area(std::span<const PRPoint> curve) {
  std::vector<PRPoint> pts(curve.begin(), curve.end());
  std::vector<double> recalls = {0.0};
  for (const auto& p : pts) recalls.push_back(p.recall);
  std::sort(recalls.begin(), recalls.end());
  recalls.erase(std::unique(recalls.begin(), recalls.end()), recalls.end());
  double area = 0.0;
  for (std::size_t i = 1; i < recalls.size(); ++i) {
    double p_interp = 0.0;
    for (const auto& p : pts) {
      if (p.recall >= recalls[i]) p_interp = std::max(p_interp, p.precision);
    }
    area += (recalls[i] - recalls[i - 1]) * p_interp;
  }
  return area;
}

// PR curve from a random ranked list of hits and misses.
inline std::vector<PRPoint> random_pr_curve(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 40), gt_extra(0, 10);
  std::bernoulli_distribution hit(0.6);
  std::uniform_real_distribution<double> conf(0.0, 1.0);
  const int n = len(rng);
  std::vector<ScoredDetection> dets;
  std::size_t tp = 0;
  for (int i = 0; i < n; ++i) {
    const bool h = hit(rng);
    tp += h ? 1 : 0;
    dets.push_back({conf(rng), h});
  }
  return pr_curve(dets, std::max<std::size_t>(1, tp + static_cast<std::size_t>(gt_extra(rng))));
}

}  // namespace epsm::oracle

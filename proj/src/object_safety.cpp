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

#include "epsm/object_safety.hpp"

#include <algorithm>
#include <tuple>

#include "epsm/criticality.hpp"
#include "epsm/perf_metrics.hpp"

namespace epsm {

bool MatchResult::is_missed(const std::string& id) const {
  return std::find(fn_ids.begin(), fn_ids.end(), id) != fn_ids.end();
}

MatchResult match(std::span<const ObjectState> gt, std::span<const DetectedBox> det,
                  const MetricParams& params) {
  struct Candidate {
    std::size_t gt;
    std::size_t det;
    double iou;
  };
  std::vector<Candidate> candidates;
  for (std::size_t g = 0; g < gt.size(); ++g) {
    const double threshold = params.iou_threshold(gt[g].cls);
    for (std::size_t d = 0; d < det.size(); ++d) {
      if (det[d].cls != gt[g].cls) continue;
      const double v = iou(gt[g].box(), det[d].box());
      if (v >= threshold) candidates.push_back({g, d, v});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    return std::tie(gt[a.gt].id, a.det) < std::tie(gt[b.gt].id, b.det);
  });

  std::vector<bool> gt_used(gt.size(), false);
  std::vector<bool> det_used(det.size(), false);
  MatchResult r;
  for (const auto& c : candidates) {
    if (gt_used[c.gt] || det_used[c.det]) continue;
    gt_used[c.gt] = det_used[c.det] = true;
    r.pairs.push_back({gt[c.gt].id, c.det, c.iou});
  }
  for (std::size_t g = 0; g < gt.size(); ++g) {
    if (!gt_used[g]) r.fn_ids.push_back(gt[g].id);
  }
  for (std::size_t d = 0; d < det.size(); ++d) {
    if (!det_used[d]) r.fp_indices.push_back(d);
  }
  return r;
}

double weighted_safety_score(std::span<const WeightedObject> objects) {
  std::vector<std::pair<double, double>> wc;
  wc.reserve(objects.size());
  for (const auto& o : objects) wc.emplace_back(o.weight, o.criticality);
  // Worst miss first so it takes the 16x multiplier.
  std::sort(wc.begin(), wc.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < wc.size(); ++i) {
    const double m = i == 0 ? 16.0 : i == 1 ? 4.0 : 1.0;
    num += m * wc[i].first;
    den += m * wc[i].second;
  }
  if (den <= 0.0) return 1.0;
  return std::clamp(1.0 - num / den, 0.0, 1.0);
}

ObjectSafety object_safety_score(const ObjectState& ego, std::span<const ObjectState> objects,
                                 const MatchResult& m, const MetricParams& params,
                                 const VehicleSeverityModel& model) {
  ObjectSafety out;
  out.objects.reserve(objects.size());
  for (const auto& o : objects) {
    WeightedObject w;
    w.id = o.id;
    w.criticality = object_criticality(ego, o, params);
    w.severity = severity(ego, o, model, params);
    w.missed = m.is_missed(o.id);
    w.weight = w.missed ? w.criticality * w.severity : 0.0;
    out.objects.push_back(std::move(w));
  }
  out.s_obj = weighted_safety_score(out.objects);
  return out;
}

ObjectSafety object_safety_score(const Frame& frame, const MatchResult& m,
                                 const MetricParams& params, const VehicleSeverityModel& model) {
  return object_safety_score(frame.ego, frame.objects, m, params, model);
}

std::vector<ObjectState> missed_objects_in_lane(std::span<const ObjectState> objects,
                                                const MatchResult& m, const LaneRecord& lane) {
  std::vector<ObjectState> out;
  if (lane.centerline.size() < 2) return out;
  for (const auto& o : objects) {
    if (m.is_missed(o.id) && lane.contains(o.position)) out.push_back(o);
  }
  return out;
}

}  // namespace epsm

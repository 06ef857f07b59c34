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

#include "epsm/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <map>

#include "epsm/criticality.hpp"

namespace epsm {

double ScenarioEvaluation::scenario_score() const {
  double worst = 1.0;
  for (const auto& f : frames) worst = std::min(worst, f.safety.s_f);
  return worst;
}

std::vector<ObjectState> objects_in_range(const Frame& frame, const MetricParams& params) {
  std::vector<ObjectState> out;
  for (const auto& o : frame.objects) {
    if (norm(o.position - frame.ego.position) <= params.detection_distance) out.push_back(o);
  }
  return out;
}

std::vector<DetectedBox> detections_in_range(const Frame& frame, const MetricParams& params) {
  std::vector<DetectedBox> out;
  for (const auto& d : frame.detections.boxes) {
    if (norm(d.position - frame.ego.position) <= params.detection_distance) out.push_back(d);
  }
  return out;
}

namespace {

// Ground-truth ego-lane centerline from the ego forward over the detection
// distance.
Polyline gt_lane_window(const LaneMap& map, const ObjectState& ego, double range) {
  const auto& line = map.ego_lane.centerline;
  const double s0 = project(line, ego.position).s;
  const double s1 = std::min(s0 + range, polyline_length(line));
  return resample(line, kLaneResampleSpacing, s0, s1);
}

// Points of the other lanes ahead of the ego and within range: the
// negatives for lane accuracy.
std::vector<Polyline> negative_lane_windows(const LaneMap& map, const ObjectState& ego,
                                            double range) {
  const Vec2 fwd = unit_from_heading(ego.heading);
  std::vector<Polyline> out;
  for (const auto& a : map.adjacent) {
    Polyline kept;
    for (const auto& p : resample(a.lane.centerline, kLaneResampleSpacing)) {
      const Vec2 rel = p - ego.position;
      if (dot(rel, fwd) >= 0.0 && norm(rel) <= range) kept.push_back(p);
    }
    if (kept.size() >= 2) out.push_back(std::move(kept));
  }
  return out;
}

ConfusionCounts object_confusion(const MatchResult& m) {
  ConfusionCounts c;
  c.tp = m.pairs.size();
  c.fn = m.fn_ids.size();
  c.fp = m.fp_indices.size();
  return c;
}

}  // namespace

FrameEvaluation evaluate_frame(const Scenario& scenario, std::size_t frame_index,
                               const VehicleSeverityModel& model) {
  const Frame& frame = scenario.frames.at(frame_index);
  const MetricParams& params = scenario.params;
  const auto gt = objects_in_range(frame, params);
  const auto det = detections_in_range(frame, params);

  FrameEvaluation ev;
  ev.frame_index = frame_index;
  ev.t = frame.t;

  // Object performance.
  ev.match = match(gt, det, params);
  ev.object_counts = object_confusion(ev.match);
  ev.object_scores = precision_recall_f1_accuracy(ev.object_counts);
  std::vector<double> ious;
  for (const auto& p : ev.match.pairs) ious.push_back(p.iou);
  ev.modp = modp(ious);
  std::vector<bool> det_tp(det.size(), false);
  for (const auto& p : ev.match.pairs) det_tp[p.det_index] = true;
  for (std::size_t d = 0; d < det.size(); ++d) {
    ev.scored.push_back({det[d].cls, {det[d].confidence, det_tp[d]}});
  }
  std::map<ObjectClass, std::size_t> per_class;
  for (const auto& o : gt) ++per_class[o.cls];
  ev.gt_per_class.assign(per_class.begin(), per_class.end());

  // Lane performance.
  const Polyline gt_lane = gt_lane_window(scenario.map, frame.ego, params.detection_distance);
  const auto negatives = negative_lane_windows(scenario.map, frame.ego, params.detection_distance);
  const Polyline no_lane;
  const Polyline& det_lane = frame.detections.lane ? *frame.detections.lane : no_lane;
  ev.lane_counts = lane_point_confusion(gt_lane, det_lane, params.lane_match_threshold,
                                        kLaneResampleSpacing, negatives);
  ev.lane_scores = precision_recall_f1_accuracy(ev.lane_counts);

  // Safety.
  ev.object_safety = object_safety_score(frame.ego, gt, ev.match, params, model);
  ev.lane = evaluate_lane_safety(frame.ego, scenario.map, frame.detections.lane, params);

  std::vector<ObjectState> missed;
  for (const auto& o : gt) {
    if (ev.match.is_missed(o.id)) missed.push_back(o);
  }
  std::vector<ObjectState> missed_in_lane;
  if (frame.detections.lane) {
    missed_in_lane = missed_objects_in_lane(gt, ev.match,
                                            LaneRecord{*frame.detections.lane, scenario.map.ego_lane.width});
  }
  ev.tree.lateral_safe = ev.lane.lateral_safe;
  ev.tree.missed_adjacent = missed_in_adjacent_lane(missed, scenario.map);
  ev.tree.in_lane_miss = in_lane_miss_surface(missed_in_lane, scenario.map);
  for (const auto& o : missed_in_lane) {
    const auto ttc = encounter(frame.ego, o).ttc;
    if (ttc && (!ev.tree.ttc_min || *ttc < *ev.tree.ttc_min)) ev.tree.ttc_min = ttc;
  }
  ev.safety = final_safety(ev.object_safety.s_obj, ev.lane.s_lane, ev.tree, params);
  return ev;
}

namespace {

void fill_cumulative_moda(ScenarioEvaluation& se) {
  se.moda_cumulative.clear();
  std::size_t errors = 0;
  std::size_t gts = 0;
  for (const auto& f : se.frames) {
    errors += f.object_counts.fn + f.object_counts.fp;
    gts += f.object_counts.tp + f.object_counts.fn;
    if (gts == 0) {
      se.moda_cumulative.push_back({0.0, true});
    } else {
      se.moda_cumulative.push_back(
          {1.0 - static_cast<double>(errors) / static_cast<double>(gts), false});
    }
  }
}

std::vector<ScenarioEvaluation> skeleton(std::span<const Scenario> scenarios) {
  std::vector<ScenarioEvaluation> out(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    out[i].scenario_id = scenarios[i].id;
    out[i].frames.resize(scenarios[i].frames.size());
  }
  return out;
}

}  // namespace

std::vector<ScenarioEvaluation> evaluate_corpus_serial(std::span<const Scenario> scenarios,
                                                       const VehicleSeverityModel& model) {
  auto out = skeleton(scenarios);
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    for (std::size_t f = 0; f < scenarios[s].frames.size(); ++f) {
      out[s].frames[f] = evaluate_frame(scenarios[s], f, model);
    }
    fill_cumulative_moda(out[s]);
  }
  return out;
}

std::vector<ScenarioEvaluation> evaluate_corpus_parallel(std::span<const Scenario> scenarios,
                                                         const VehicleSeverityModel& model,
                                                         int threads) {
  auto out = skeleton(scenarios);
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    for (std::size_t f = 0; f < scenarios[s].frames.size(); ++f) tasks.emplace_back(s, f);
  }
  std::vector<std::exception_ptr> errors(tasks.size());
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto [s, f] = tasks[static_cast<std::size_t>(i)];
    try {
      out[s].frames[f] = evaluate_frame(scenarios[s], f, model);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& se : out) fill_cumulative_moda(se);
  return out;
}

std::vector<ScenarioEvaluation> evaluate_corpus(std::span<const Scenario> scenarios,
                                                const VehicleSeverityModel& model, Execution exec) {
  if (exec.is_serial()) return evaluate_corpus_serial(scenarios, model);
  return evaluate_corpus_parallel(scenarios, model, exec.threads);
}

std::vector<ClassAp> average_precision_by_class(std::span<const ScenarioEvaluation> evals) {
  std::map<ObjectClass, std::vector<ScoredDetection>> dets;
  std::map<ObjectClass, std::size_t> gts;
  for (const auto& se : evals) {
    for (const auto& f : se.frames) {
      for (const auto& d : f.scored) dets[d.cls].push_back(d.det);
      for (const auto& [cls, n] : f.gt_per_class) gts[cls] += n;
    }
  }
  std::vector<ClassAp> out;
  for (const auto& [cls, n] : gts) {
    if (n == 0) continue;
    const auto curve = pr_curve(dets[cls], n);
    out.push_back({std::string(to_string(cls)), n, ap_allpoint(curve), ap_11point(curve)});
  }
  return out;
}

}  // namespace epsm

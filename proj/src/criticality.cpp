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

#include "epsm/criticality.hpp"

#include <algorithm>
#include <cmath>

namespace epsm {

namespace {

double falloff_sigmoid(double x, double falloff, double k) {
  return 1.0 / (1.0 + std::exp(k * (x - falloff)));
}

}  // namespace

EncounterResult encounter(const Disk& a, const Disk& b) {
  const Vec2 dp = b.position - a.position;
  const Vec2 dv = b.velocity - a.velocity;
  const double reach = a.radius + b.radius;

  // |dp + t dv|^2 = reach^2  <=>  qa t^2 + 2 qb t + qc = 0
  const double qa = dot(dv, dv);
  const double qb = dot(dp, dv);
  const double qc = dot(dp, dp) - reach * reach;

  EncounterResult r;
  if (qc <= 0.0) {
    r.ttc = 0.0;
  } else if (qa > 0.0) {
    const double disc = qb * qb - qa * qc;
    if (disc >= 0.0) {
      // Both roots share a sign because qc / qa > 0; the smaller one is the
      // entry time.
      const double entry = (-qb - std::sqrt(disc)) / qa;
      if (entry >= 0.0) r.ttc = entry;
    }
  }

  const double t_star = qa > 0.0 ? -qb / qa : 0.0;
  r.closing = t_star > 0.0;
  r.ttce = r.closing ? t_star : 0.0;
  const double closest = norm(dp + dv * r.ttce);
  r.d_ttce = std::max(0.0, closest - reach);
  return r;
}

double criticality_from_ttc(std::optional<double> ttc, const MetricParams& params) {
  if (!ttc) return 0.0;
  return falloff_sigmoid(*ttc, params.t_falloff, params.k_sigmoid);
}

double criticality_from_ttce(double ttce, double d_ttce, const MetricParams& params) {
  return std::max(falloff_sigmoid(ttce, params.t_falloff, params.k_sigmoid),
                  falloff_sigmoid(d_ttce, params.d_falloff, params.k_sigmoid));
}

double encounter_ttce_criticality(const EncounterResult& e, const MetricParams& params) {
  if (e.closing) return criticality_from_ttce(e.ttce, e.d_ttce, params);
  return falloff_sigmoid(e.d_ttce, params.d_falloff, params.k_sigmoid);
}

double encounter_criticality(const EncounterResult& e, const MetricParams& params) {
  return std::max(criticality_from_ttc(e.ttc, params), encounter_ttce_criticality(e, params));
}

double rear_criticality(const ObjectState& ego, const ObjectState& obj,
                        const MetricParams& params) {
  const Vec2 forward = unit_from_heading(ego.heading);
  if (!(dot(obj.position - ego.position, forward) < 0.0)) return 0.0;
  return encounter_criticality(encounter(obj, ego), params);
}

double vru_criticality(const ObjectState& ego, const ObjectState& vru,
                       const MetricParams& params) {
  // Zone diameter is eight times the VRU speed.
  const double zone_radius = 4.0 * vru.speed();
  if (norm(vru.position - ego.position) < zone_radius) return 1.0;
  return encounter_ttce_criticality(encounter(ego, vru), params);
}

double object_criticality(const ObjectState& ego, const ObjectState& obj,
                          const MetricParams& params) {
  if (is_vru(obj.cls)) return vru_criticality(ego, obj, params);
  const double forward = encounter_criticality(encounter(ego, obj), params);
  return std::max(forward, rear_criticality(ego, obj, params));
}

}  // namespace epsm

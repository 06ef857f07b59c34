#!/usr/bin/env python3
# Copyright 2026 The EPSM Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the hand-built scenarios under data/fixtures."""

import json
import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures"

LANE_W = 3.5
CAR_L, CAR_W = 4.5, 1.8
CAR_R = 0.5 * math.hypot(CAR_L, CAR_W)


def line(y, x0=-100.0, x1=300.0):
    return [[x0, y], [x1, y]]


MAP = {
    "ego_lane": {"centerline_m": line(0.0), "width_m": LANE_W},
    "adjacent": [
        {"relation": "oncoming", "centerline_m": line(3.5), "width_m": LANE_W},
        {"relation": "sidewalk", "centerline_m": line(-2.75), "width_m": 2.0},
    ],
    "speed_limit_mps": 13.9,
}


def obj(oid, cls, x, y, vx=0.0, vy=0.0, heading=0.0, length=CAR_L, width=CAR_W, age=None):
    o = {
        "id": oid,
        "class": cls,
        "position_m": [x, y],
        "heading_rad": heading,
        "velocity_mps": [vx, vy],
        "length_m": length,
        "width_m": width,
    }
    if age is not None:
        o["age_years"] = age
    return o


def ped(oid, x, y, age=30.0):
    return obj(oid, "pedestrian", x, y, length=0.6, width=0.6, age=age)


def box(o):
    return {
        "class": o["class"],
        "position_m": list(o["position_m"]),
        "heading_rad": o["heading_rad"],
        "length_m": o["length_m"],
        "width_m": o["width_m"],
        "confidence": 1.0,
    }


def lane_ahead(x0, offset, length=50.0, step=0.5):
    n = int(round(length / step))
    return [[x0 + i * step, offset] for i in range(n + 1)]


def static_scenario(sid, desc, objects_at, missed, lane_offset, frames=3, dt=0.1, ego_v=10.0):
    """Objects move at constant velocity; detections are exact except `missed`."""
    out = []
    for f in range(frames):
        t = f * dt
        ego = obj("ego", "car", ego_v * t, 0.0, ego_v, 0.0)
        objs = []
        for o in objects_at:
            m = dict(o)
            m["position_m"] = [o["position_m"][0] + o["velocity_mps"][0] * t,
                               o["position_m"][1] + o["velocity_mps"][1] * t]
            objs.append(m)
        det = {
            "boxes": [box(o) for o in objs if o["id"] not in missed],
            "lane_pts_m": lane_ahead(ego["position_m"][0], lane_offset),
        }
        out.append({"t_s": round(t, 10), "ego": ego, "objects": objs, "detections": det})
    return {"id": sid, "description": desc, "map": MAP, "frames": out}


def write(name, doc):
    path = OUT / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n")


def crossing():
    # A car starts from rest north of the ego path and accelerates south so
    # that the two meet at t = 2.9 s. It is never detected; six co-moving or
    # static neighbours are.
    ve, tc, vf = 10.0, 2.9, 18.0
    a = vf / tc
    x_c, y0 = ve * tc, 0.5 * a * tc * tc
    frames = []
    for f in range(28):
        t = round(0.1 * f, 10)
        ego = obj("ego", "car", ve * t, 0.0, ve, 0.0)
        objs = [
            obj("crossing_car", "car", x_c, y0 - 0.5 * a * t * t, 0.0, -a * t, heading=-math.pi / 2),
            obj("lead_near", "car", 12.0 + ve * t, 0.0, ve, 0.0),
            obj("lead_far", "car", 40.0 + ve * t, 0.0, ve, 0.0),
            obj("follower", "car", -20.0 + ve * t, 0.0, ve, 0.0),
            ped("ped_a", -6.0, -2.75),
            ped("ped_b", -12.0, -2.75),
            obj("parked", "car", -15.0, 3.5, heading=-math.pi),
        ]
        frames.append({"t_s": t, "ego": ego, "objects": objs})
    return {
        "id": "crossing",
        "description": "Vehicle crossing the ego path, never detected",
        "colliding_ids": ["ego", "crossing_car"],
        "sensor": {
            "seed": 7,
            "max_lane_distance_m": 50.0,
            "lane_noise_sigma_m": 0.05,
            "detect_prob_curve": [{"upper_m": 60.0, "p": 1.0}],
            "bbox_size_jitter_sigma": 0.01,
            "heading_jitter_sigma_rad": 0.005,
            "force_miss_ids": ["crossing_car"],
        },
        "map": MAP,
        "frames": frames,
    }


def main():
    write("crossing.json", crossing())

    lead = obj("lead", "car", 20.0, 0.0, 10.0, 0.0)
    oncoming = obj("oncoming", "car", 30.0, 3.5, -10.0, 0.0, heading=-math.pi)
    write("tree_a1.json", static_scenario(
        "tree_a1", "Accurate lane, missed oncoming car", [lead, oncoming], {"oncoming"}, 0.0))
    write("tree_a2.json", static_scenario(
        "tree_a2", "Accurate lane, everything detected", [lead, oncoming], set(), 0.0))
    walker = ped("walker", 15.0, -2.3)
    write("tree_b1_1.json", static_scenario(
        "tree_b1_1", "Lane drifts onto the sidewalk, missed pedestrian there",
        [lead, walker], {"walker"}, -1.0))
    # Closing at 5 m/s with a 2 s gap between the bounding disks.
    slow = obj("slow", "car", 2 * CAR_R + 10.0, 0.0, 5.0, 0.0)
    write("tree_b1_2.json", static_scenario(
        "tree_b1_2", "Lane drifts, missed slower car in the ego lane",
        [slow, oncoming], {"slow"}, -1.0))
    write("tree_b2.json", static_scenario(
        "tree_b2", "Lane drifts, nothing missed", [lead, oncoming], set(), -1.0))

    write("perfect.json", static_scenario(
        "perfect", "Every object and the lane detected exactly",
        [lead, oncoming, ped("bystander", 10.0, -2.75)], set(), 0.0, frames=10))

    bad = static_scenario("duplicate_id", "Two objects share an id", [lead, lead], set(), 0.0, frames=1)
    write("invalid/duplicate_id.json", bad)
    (OUT / "invalid" / "syntax_error.json").write_text('{"id": "broken",\n  "frames": [\n')


if __name__ == "__main__":
    main()

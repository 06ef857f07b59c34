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

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace epsm {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline Vec2 unit_from_heading(double heading) {
  return {std::cos(heading), std::sin(heading)};
}

// Wraps an angle into [-pi, pi).
double wrap_angle(double a);

constexpr double kMpsToKmh = 3.6;

using Polyline = std::vector<Vec2>;

// Cumulative arc length at each vertex; front() == 0.
std::vector<double> arc_lengths(std::span<const Vec2> line);
double polyline_length(std::span<const Vec2> line);

// Point at arc length s, clamped to the polyline's extent.
Vec2 point_at(std::span<const Vec2> line, double s);
// Unit left normal of the segment containing arc length s.
Vec2 normal_at(std::span<const Vec2> line, double s);

// Samples at s0, s0 + spacing, ... up to and including s1 (within 1e-9).
Polyline resample(std::span<const Vec2> line, double spacing, double s0,
                  double s1);
Polyline resample(std::span<const Vec2> line, double spacing);

struct Projection {
  double s = 0.0;         // arc length of the foot point
  double distance = 0.0;  // unsigned distance to the foot point
  double lateral = 0.0;   // signed, positive to the left of travel direction
};

Projection project(std::span<const Vec2> line, Vec2 p);
double distance_to_polyline(std::span<const Vec2> line, Vec2 p);

// Oriented rectangle footprint (bird's-eye box).
struct Box2D {
  Vec2 center;
  double heading = 0.0;
  double length = 0.0;
  double width = 0.0;
};

std::vector<Vec2> corners(const Box2D& b);  // counter-clockwise
double polygon_area(std::span<const Vec2> poly);  // signed, CCW positive
// Intersection of two convex CCW polygons.
std::vector<Vec2> clip_convex(std::span<const Vec2> subject,
                              std::span<const Vec2> clip);

}  // namespace epsm

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

#include "epsm/geometry.hpp"

#include <algorithm>
#include <limits>

namespace epsm {

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (a >= -std::numbers::pi && a < std::numbers::pi) return a;
  double w = std::fmod(a + std::numbers::pi, two_pi);
  if (w < 0.0) w += two_pi;
  w -= std::numbers::pi;
  // fmod can land exactly on +pi after rounding.
  if (w >= std::numbers::pi) w -= two_pi;
  return w;
}

std::vector<double> arc_lengths(std::span<const Vec2> line) {
  std::vector<double> s(line.size(), 0.0);
  for (std::size_t i = 1; i < line.size(); ++i) {
    s[i] = s[i - 1] + norm(line[i] - line[i - 1]);
  }
  return s;
}

double polyline_length(std::span<const Vec2> line) {
  double len = 0.0;
  for (std::size_t i = 1; i < line.size(); ++i) len += norm(line[i] - line[i - 1]);
  return len;
}

namespace {

// Index of the segment [i, i+1] containing arc length s (clamped).
std::size_t segment_at(const std::vector<double>& s_acc, double s) {
  auto it = std::upper_bound(s_acc.begin(), s_acc.end(), s);
  std::size_t i = it == s_acc.begin() ? 0 : static_cast<std::size_t>(it - s_acc.begin()) - 1;
  return std::min(i, s_acc.size() - 2);
}

}  // namespace

Vec2 point_at(std::span<const Vec2> line, double s) {
  if (line.size() == 1) return line.front();
  const auto s_acc = arc_lengths(line);
  s = std::clamp(s, 0.0, s_acc.back());
  const std::size_t i = segment_at(s_acc, s);
  const double seg = s_acc[i + 1] - s_acc[i];
  const double u = seg > 0.0 ? (s - s_acc[i]) / seg : 0.0;
  return line[i] + (line[i + 1] - line[i]) * u;
}

Vec2 normal_at(std::span<const Vec2> line, double s) {
  const auto s_acc = arc_lengths(line);
  const std::size_t i = segment_at(s_acc, std::clamp(s, 0.0, s_acc.back()));
  Vec2 d = line[i + 1] - line[i];
  const double n = norm(d);
  if (n == 0.0) return {0.0, 1.0};
  return {-d.y / n, d.x / n};
}

Polyline resample(std::span<const Vec2> line, double spacing, double s0,
                  double s1) {
  Polyline out;
  if (line.empty() || spacing <= 0.0 || s1 < s0) return out;
  const auto count = static_cast<std::size_t>(std::floor((s1 - s0) / spacing + 1e-9));
  out.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    out.push_back(point_at(line, s0 + static_cast<double>(k) * spacing));
  }
  return out;
}

Polyline resample(std::span<const Vec2> line, double spacing) {
  return resample(line, spacing, 0.0, polyline_length(line));
}

Projection project(std::span<const Vec2> line, Vec2 p) {
  Projection best{0.0, std::numeric_limits<double>::infinity(), 0.0};
  if (line.size() == 1) {
    best.distance = norm(p - line.front());
    return best;
  }
  double s_base = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const Vec2 a = line[i];
    const Vec2 d = line[i + 1] - a;
    const double len2 = dot(d, d);
    const double len = std::sqrt(len2);
    double u = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
    const double side = cross(d, p - a);
    // Perpendicular form for interior feet keeps on-line points at exactly 0.
    const double dist = (u > 0.0 && u < 1.0) ? std::abs(side) / len : norm(p - (a + d * u));
    if (dist < best.distance) {
      best.distance = dist;
      best.s = s_base + u * len;
      best.lateral = side >= 0.0 ? dist : -dist;
    }
    s_base += len;
  }
  return best;
}

double distance_to_polyline(std::span<const Vec2> line, Vec2 p) {
  return project(line, p).distance;
}

std::vector<Vec2> corners(const Box2D& b) {
  const Vec2 f = unit_from_heading(b.heading) * (0.5 * b.length);
  const Vec2 l = Vec2{-std::sin(b.heading), std::cos(b.heading)} * (0.5 * b.width);
  return {b.center + f - l, b.center + f + l, b.center - f + l, b.center - f - l};
}

double polygon_area(std::span<const Vec2> poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    a += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * a;
}

// Sutherland-Hodgman against each edge of the convex clip polygon.
std::vector<Vec2> clip_convex(std::span<const Vec2> subject,
                              std::span<const Vec2> clip) {
  std::vector<Vec2> out(subject.begin(), subject.end());
  for (std::size_t e = 0; e < clip.size() && !out.empty(); ++e) {
    const Vec2 a = clip[e];
    const Vec2 b = clip[(e + 1) % clip.size()];
    const Vec2 edge = b - a;
    auto inside = [&](Vec2 p) { return cross(edge, p - a) >= 0.0; };
    std::vector<Vec2> in = std::move(out);
    out.clear();
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Vec2 cur = in[i];
      const Vec2 prev = in[(i + in.size() - 1) % in.size()];
      const bool cur_in = inside(cur);
      const bool prev_in = inside(prev);
      if (cur_in != prev_in) {
        const Vec2 d = cur - prev;
        const double denom = cross(edge, d);
        if (denom != 0.0) {
          const double t = cross(a - prev, edge) / -denom;
          out.push_back(prev + d * t);
        }
      }
      if (cur_in) out.push_back(cur);
    }
  }
  return out;
}

}  // namespace epsm

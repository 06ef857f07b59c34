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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "epsm/geometry.hpp"

namespace epsm {
namespace {

TEST(Geometry, WrapAngleRange) {
  EXPECT_DOUBLE_EQ(wrap_angle(0.0), 0.0);
  EXPECT_DOUBLE_EQ(wrap_angle(std::numbers::pi), -std::numbers::pi);
  EXPECT_NEAR(wrap_angle(3 * std::numbers::pi / 2), -std::numbers::pi / 2, 1e-12);
  for (double a = -20.0; a < 20.0; a += 0.37) {
    const double w = wrap_angle(a);
    EXPECT_GE(w, -std::numbers::pi);
    EXPECT_LT(w, std::numbers::pi);
  }
}

TEST(Geometry, PolylineArcLengthAndPoint) {
  const Polyline l = {{0, 0}, {3, 0}, {3, 4}};
  EXPECT_DOUBLE_EQ(polyline_length(l), 7.0);
  const Vec2 p = point_at(l, 5.0);
  EXPECT_DOUBLE_EQ(p.x, 3.0);
  EXPECT_DOUBLE_EQ(p.y, 2.0);
}

TEST(Geometry, ResampleSpacing) {
  const Polyline l = {{0, 0}, {10, 0}};
  const auto r = resample(l, 0.5);
  ASSERT_EQ(r.size(), 21u);
  EXPECT_DOUBLE_EQ(r.back().x, 10.0);
}

TEST(Geometry, ProjectSignedLateral) {
  const Polyline l = {{0, 0}, {10, 0}};
  const auto left = project(l, {4, 2});
  EXPECT_DOUBLE_EQ(left.s, 4.0);
  EXPECT_DOUBLE_EQ(left.lateral, 2.0);
  EXPECT_DOUBLE_EQ(project(l, {4, -1.5}).lateral, -1.5);
  EXPECT_DOUBLE_EQ(distance_to_polyline(l, {13, 4}), 5.0);
}

TEST(Geometry, BoxCornersAreCounterClockwise) {
  const Box2D b{{1, 2}, 0.3, 4.0, 2.0};
  const auto c = corners(b);
  EXPECT_NEAR(polygon_area(c), 8.0, 1e-12);
}

TEST(Geometry, ClipConvexSquares) {
  const Box2D a{{0, 0}, 0.0, 2.0, 2.0};
  const Box2D b{{1, 1}, 0.0, 2.0, 2.0};
  const auto ca = corners(a);
  const auto cb = corners(b);
  EXPECT_NEAR(polygon_area(clip_convex(ca, cb)), 1.0, 1e-12);
}

}  // namespace
}  // namespace epsm

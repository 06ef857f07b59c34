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

#include "epsm/criticality.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace epsm {
namespace {

using testing::make_car;
using testing::make_pedestrian;

const MetricParams kParams;

TEST(Criticality, HeadOnQuadraticRoot) {
  const auto e = encounter(Disk{{0, 0}, {10, 0}, 1.0}, Disk{{30, 0}, {0, 0}, 1.0});
  ASSERT_TRUE(e.ttc.has_value());
  EXPECT_NEAR(*e.ttc, 2.8, 1e-12);
}

TEST(Criticality, StaticPairHasNoContact) {
  const auto e = encounter(Disk{{0, 0}, {0, 0}, 1.0}, Disk{{10, 0}, {0, 0}, 1.0});
  EXPECT_FALSE(e.ttc.has_value());
  EXPECT_EQ(e.ttce, 0.0);
  EXPECT_DOUBLE_EQ(e.d_ttce, 8.0);
}

TEST(Criticality, PerpendicularClosestApproach) {
  const auto e = encounter(Disk{{0, 0}, {10, 0}, 0.0}, Disk{{20, 3}, {0, 0}, 0.0});
  EXPECT_FALSE(e.ttc.has_value());
  EXPECT_NEAR(e.ttce, 2.0, 1e-12);
  EXPECT_NEAR(e.d_ttce, 3.0, 1e-12);
}

TEST(Criticality, OverlapMeansZeroTtc) {
  const auto e = encounter(Disk{{0, 0}, {0, 0}, 2.0}, Disk{{1, 0}, {1, 0}, 2.0});
  ASSERT_TRUE(e.ttc.has_value());
  EXPECT_EQ(*e.ttc, 0.0);
}

TEST(Criticality, SigmoidAnchors) {
  EXPECT_NEAR(criticality_from_ttc(2.5, kParams), 0.5, 1e-12);
  EXPECT_NEAR(criticality_from_ttc(1.0, kParams), 0.98901, 1e-5);
  EXPECT_NEAR(criticality_from_ttc(4.0, kParams), 0.01099, 1e-5);
  EXPECT_EQ(criticality_from_ttc(std::nullopt, kParams), 0.0);
}

TEST(Criticality, TtcScoreStrictlyDecreasing) {
  double prev = 2.0;
  for (double t = 0.0; t <= 10.0; t += 0.05) {
    const double c = criticality_from_ttc(t, kParams);
    EXPECT_LT(c, prev);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
    prev = c;
  }
}

TEST(Criticality, TtceScoreExamples) {
  EXPECT_NEAR(criticality_from_ttce(2.5, 4.5, kParams), 0.5, 1e-12);
  EXPECT_NEAR(criticality_from_ttce(10.0, 0.0, kParams), 0.99999, 1e-5);
  EXPECT_NEAR(criticality_from_ttce(2.0, 3.0, kParams), 0.98901, 1e-5);
  EXPECT_NEAR(criticality_from_ttce(2.0, 30.0, kParams), 0.81757, 1e-5);
}

TEST(Criticality, DistanceTermStrictlyDecreasing) {
  double prev = 2.0;
  for (double d = 0.0; d <= 12.0; d += 0.1) {
    const double c = criticality_from_ttce(100.0, d, kParams);
    EXPECT_LT(c, prev);
    prev = c;
  }
}

TEST(Criticality, RearExamples) {
  const auto ego = make_car("ego", {0, 0}, {0, 0});
  EXPECT_EQ(rear_criticality(ego, make_car("a", {30, 0}), kParams), 0.0);

  // Radii sum 2 m, gap 10 m, closing 8 m/s.
  ObjectState behind = make_car("b", {-10, 0}, {8, 0});
  ObjectState ego_small = ego;
  for (ObjectState* o : {&behind, &ego_small}) {
    o->length = 2.0 * std::sqrt(0.5);
    o->width = 2.0 * std::sqrt(0.5);
  }
  ASSERT_NEAR(ego_small.radius(), 1.0, 1e-12);
  // The TTC branch gives 0.98901; contact also zeroes the clearance, so the
  // distance branch dominates.
  const auto rear = encounter(behind, ego_small);
  ASSERT_TRUE(rear.ttc.has_value());
  EXPECT_NEAR(*rear.ttc, 1.0, 1e-12);
  EXPECT_NEAR(criticality_from_ttc(rear.ttc, kParams), 0.98901, 1e-5);
  EXPECT_NEAR(rear_criticality(ego_small, behind, kParams), 1.0 / (1.0 + std::exp(-13.5)), 1e-12);

  const auto away = make_car("c", {-50, 0}, {-5, 0});
  EXPECT_LE(rear_criticality(ego, away, kParams), 0.011);
}

TEST(Criticality, VruZone) {
  const auto ego = make_car("ego", {0, 0});
  EXPECT_EQ(vru_criticality(ego, make_pedestrian("p", {5, 0}, {0, 1.4}), kParams), 1.0);
  EXPECT_LE(vru_criticality(ego, make_pedestrian("p", {20, 0}), kParams), 0.011);
  // Exactly on the boundary: 4 * 1.25 = 5 m.
  const auto edge = make_pedestrian("p", {5, 0}, {0, 1.25});
  EXPECT_LT(vru_criticality(ego, edge, kParams), 1.0);
  EXPECT_EQ(vru_criticality(ego, edge, kParams),
            encounter_ttce_criticality(encounter(ego, edge), kParams));
}

TEST(Criticality, ObjectCriticalityIsMaxOfBranches) {
  const auto ego = make_car("ego", {0, 0}, {10, 0});
  // Head-on, ttc = 1 s: gap 20 m minus radii, closing 20 m/s.
  const double r = ego.radius();
  const auto oncoming = make_car("o", {20.0 + 2 * r, 0}, {-10, 0}, -3.14159);
  const auto e = encounter(ego, oncoming);
  ASSERT_TRUE(e.ttc.has_value());
  EXPECT_NEAR(*e.ttc, 1.0, 1e-12);
  EXPECT_NEAR(criticality_from_ttc(e.ttc, kParams), 0.98901, 1e-5);
  EXPECT_NEAR(object_criticality(ego, oncoming, kParams), 1.0 / (1.0 + std::exp(-13.5)), 1e-12);

  const auto parallel = make_car("p", {0, 40}, {10, 0});
  EXPECT_LE(object_criticality(ego, parallel, kParams), 0.011);
  EXPECT_EQ(object_criticality(ego, make_pedestrian("v", {3, 0}, {1.4, 0}), kParams), 1.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-30, 30), v(-12, 12);
  for (int i = 0; i < 300; ++i) {
    const auto obj = make_car("x", {u(rng), u(rng)}, {v(rng), v(rng)});
    const double c = object_criticality(ego, obj, kParams);
    const auto e = encounter(ego, obj);
    EXPECT_EQ(c, std::max({criticality_from_ttc(e.ttc, kParams),
                           encounter_ttce_criticality(e, kParams),
                           rear_criticality(ego, obj, kParams)}));
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
  }
}

TEST(Criticality, EncounterSymmetry) {
  for (const auto& p : oracle::random_pairs(300, 17)) {
    const auto ab = encounter(p.a, p.b);
    const auto ba = encounter(p.b, p.a);
    EXPECT_EQ(ab.ttc.has_value(), ba.ttc.has_value());
    if (ab.ttc && ba.ttc) EXPECT_NEAR(*ab.ttc, *ba.ttc, 1e-12);
    EXPECT_NEAR(ab.ttce, ba.ttce, 1e-12);
    EXPECT_NEAR(ab.d_ttce, ba.d_ttce, 1e-12);
  }
}

TEST(Criticality, TtcImpliesZeroClearance) {
  for (const auto& p : oracle::random_pairs(500, 23)) {
    const auto e = encounter(p.a, p.b);
    if (e.ttc) EXPECT_EQ(e.d_ttce, 0.0);
  }
}

TEST(Criticality, BruteForceOracle) {
  for (const auto& p : oracle::random_pairs(200, 99)) {
    const auto e = encounter(p.a, p.b);
    const auto s = oracle::step_encounter(p.a, p.b);
    ASSERT_EQ(e.ttc.has_value(), s.ttc.has_value());
    if (e.ttc) EXPECT_NEAR(*e.ttc, *s.ttc, 2e-3);
    EXPECT_NEAR(e.ttce, s.ttce, 2e-3);
    EXPECT_NEAR(e.d_ttce, s.d_ttce, 1e-2);
  }
}

}  // namespace
}  // namespace epsm

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
#include <fstream>
#include <sstream>

#include "epsm/errors.hpp"
#include "epsm/severity.hpp"
#include "test_support.hpp"

namespace epsm {
namespace {

using testing::default_model;
using testing::make_car;
using testing::make_object;
using testing::make_pedestrian;

struct GridPoint {
  double v, age, p_k, p_ksi;
};

std::vector<GridPoint> load_grid() {
  std::ifstream in(testing::test_data_dir() / "pedestrian_grid.csv");
  std::string line;
  std::getline(in, line);
  std::vector<GridPoint> out;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    GridPoint g{};
    char comma;
    row >> g.v >> comma >> g.age >> comma >> g.p_k >> comma >> g.p_ksi;
    out.push_back(g);
  }
  return out;
}

TEST(Severity, PedestrianExamples) {
  // Reference values from a 30-digit evaluation.
  EXPECT_NEAR(pedestrian_fatality_prob(0, 0), 3.0524211130e-4, 1e-13);
  EXPECT_NEAR(pedestrian_fatality_prob(50, 30), 0.028773636406, 1e-11);
  EXPECT_GT(pedestrian_fatality_prob(60, 30), pedestrian_fatality_prob(50, 30));
  EXPECT_NEAR(pedestrian_ksi_prob(0, 0), 0.047911611009, 1e-11);
  // z = -2.9893 + 0.0013 * 1600 + 0.0286 * 50 = 0.5207
  EXPECT_NEAR(pedestrian_ksi_prob(40, 50), 0.627311435151, 1e-11);
}

TEST(Severity, HighPrecisionGrid) {
  const auto grid = load_grid();
  ASSERT_EQ(grid.size(), 50u);
  for (const auto& g : grid) {
    EXPECT_NEAR(pedestrian_fatality_prob(g.v, g.age) / g.p_k, 1.0, 1e-12) << g.v << " " << g.age;
    EXPECT_NEAR(pedestrian_ksi_prob(g.v, g.age) / g.p_ksi, 1.0, 1e-12) << g.v << " " << g.age;
  }
}

TEST(Severity, KsiDominatesFatality) {
  for (double v = 0; v <= 200; v += 1.0) {
    for (double a = 0; a <= 120; a += 1.0) {
      ASSERT_GE(pedestrian_ksi_prob(v, a), pedestrian_fatality_prob(v, a)) << v << " " << a;
    }
  }
}

TEST(Severity, LinearMap) {
  EXPECT_EQ(linear_map(0.5, 0.5, 1.0, 0.8, 1.0), 0.8);
  EXPECT_NEAR(linear_map(0.75, 0.5, 1.0, 0.8, 1.0), 0.9, 1e-15);
  EXPECT_EQ(linear_map(1.0, 0.5, 1.0, 0.8, 1.0), 1.0);
  EXPECT_THROW(linear_map(0.4, 0.5, 1.0, 0.8, 1.0), DomainError);
}

TEST(Severity, VruBands) {
  EXPECT_NEAR(vru_severity(0.0, 0.0), pedestrian_ksi_prob(0, 0) * 0.8, 1e-15);
  EXPECT_NEAR(vru_severity(0.0, 0.0), 0.038329288807, 1e-11);
  double prev = -1.0;
  for (double v = 0.0; v <= 60.0; v += 0.05) {
    for (double age : {5.0, 30.0, 80.0}) {
      const double i = vru_severity(v, age);
      const double vk = v * 3.6;
      const double pk = pedestrian_fatality_prob(vk, age);
      const double pksi = pedestrian_ksi_prob(vk, age);
      if (pk >= 0.5) {
        EXPECT_GE(i, 0.8);
      } else if (pksi >= 0.5) {
        EXPECT_GE(i, 0.4);
        EXPECT_LT(i, 0.8);
      } else {
        EXPECT_LE(i, 0.4);
      }
    }
    const double i30 = vru_severity(v, 30.0);
    EXPECT_GE(i30, prev);
    prev = i30;
  }
}

VehicleSeverityModel flat_model(double fatal_intercept) {
  VehicleSeverityModel m;
  m.fatal.intercept = fatal_intercept;
  m.mais3.intercept = -10;
  m.mais2.intercept = -10;
  return m;
}

TEST(Severity, VehicleBandEdges) {
  EXPECT_EQ(vehicle_severity(0.0, ImpactDirection::Front, default_model()), 0.0);
  EXPECT_EQ(vehicle_severity(12.0, ImpactDirection::Side, flat_model(0.0)), 0.8);
}

TEST(Severity, DefaultModelMonotoneInSpeed) {
  for (auto dir : {ImpactDirection::Front, ImpactDirection::Side, ImpactDirection::Rear}) {
    double prev = -1.0;
    for (double v = 0.0; v <= 70.0; v += 0.01) {
      const double i = vehicle_severity(v, dir, default_model());
      ASSERT_GE(i, prev) << v;
      ASSERT_GE(i, 0.0);
      ASSERT_LE(i, 1.0);
      prev = i;
    }
  }
}

TEST(Severity, VehicleBandsMatchProbabilities) {
  for (double v = 0.0; v <= 70.0; v += 0.25) {
    const auto p = vehicle_injury_probabilities(v, ImpactDirection::Front, default_model());
    const double i = vehicle_severity(v, ImpactDirection::Front, default_model());
    if (p.fatal >= 0.5) {
      EXPECT_GE(i, 0.8);
    } else if (p.mais3 >= 0.5) {
      EXPECT_GE(i, 0.2);
      EXPECT_LT(i, 0.8);
    } else if (p.mais2 >= 0.5) {
      EXPECT_LE(i, 0.2);
    } else {
      EXPECT_EQ(i, 0.0);
    }
  }
}

TEST(Severity, ImpactDirection) {
  const auto ego = make_car("ego", {0, 0}, {10, 0});
  EXPECT_EQ(impact_direction(ego, make_car("a", {20, 1}, {-10, 0})), ImpactDirection::Front);
  EXPECT_EQ(impact_direction(ego, make_car("a", {0, 10})), ImpactDirection::Side);
  EXPECT_EQ(impact_direction(ego, make_car("a", {-10, 1})), ImpactDirection::Rear);
}

TEST(Severity, Dispatch) {
  const MetricParams params;
  const auto ego = make_car("ego", {0, 0});
  auto ped = make_pedestrian("p", {5, 0});
  ped.age = 70.0;
  EXPECT_EQ(severity(ego, ped, default_model(), params), vru_severity(0.0, 70.0));
  const auto ped_no_age = make_pedestrian("q", {5, 0});
  EXPECT_EQ(severity(ego, ped_no_age, default_model(), params), vru_severity(0.0, 30.0));
  const auto moving = make_car("ego", {0, 0}, {12, 0});
  const auto cyclist = make_object("c", ObjectClass::Cyclist, {5, 0}, {4, 0});
  EXPECT_EQ(severity(moving, cyclist, default_model(), params), vru_severity(12.0, 30.0));
}

TEST(Severity, ModelFileErrors) {
  auto doc = read_json_file(default_severity_model_path());
  EXPECT_NO_THROW(severity_model_from_json(doc));
  auto missing = doc;
  missing["models"].erase("fatal");
  EXPECT_THROW(severity_model_from_json(missing), ModelError);
  auto unit = doc;
  unit["velocity_unit"] = "m/s";
  EXPECT_THROW(severity_model_from_json(unit), ModelError);
  auto term = doc;
  term["models"]["fatal"].push_back(nlohmann::json::array({"V3", 1.0}));
  EXPECT_THROW(severity_model_from_json(term), ModelError);
  auto negative = doc;
  negative["models"]["mais2plus"] = nlohmann::json::parse(R"([["1", -3.0], ["V", -0.1]])");
  EXPECT_THROW(severity_model_from_json(negative), ModelError);
}

}  // namespace
}  // namespace epsm

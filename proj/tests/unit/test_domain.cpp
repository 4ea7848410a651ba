// Copyright 2026 The stablefield Authors
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

#include "stablefield/domain.hpp"
#include "stablefield/field.hpp"
#include "stablefield/field_io.hpp"

#include <sstream>

namespace sf = stablefield;

TEST(PointSet, ConstructionAndAccess) {
  const sf::PointSet p{2, {1.0, 2.0, 3.0, 4.0}};
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p[1][0], 3.0);
  EXPECT_THROW((sf::PointSet{2, {1.0, 2.0, 3.0}}), std::invalid_argument);
  const sf::PointSet grid = sf::PointSet::linspace(-1.0, 1.0, 5);
  EXPECT_EQ(grid.size(), 5u);
  EXPECT_EQ(grid[0][0], -1.0);
  EXPECT_EQ(grid[2][0], 0.0);
  EXPECT_EQ(grid[4][0], 1.0);
}

TEST(Geometry, BallVolumeAndSphereArea) {
  EXPECT_NEAR(sf::unit_ball_volume(1), 2.0, 1e-15);
  EXPECT_NEAR(sf::unit_ball_volume(2), std::numbers::pi, 1e-15);
  EXPECT_NEAR(sf::unit_ball_volume(3), 4.0 * std::numbers::pi / 3.0, 1e-14);
  EXPECT_NEAR(sf::unit_sphere_area(1), 2.0, 1e-15);
  EXPECT_NEAR(sf::unit_sphere_area(2), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sf::unit_sphere_area(3), 4.0 * std::numbers::pi, 1e-14);
}

TEST(Domain, Interval) {
  const sf::Domain d = sf::Domain::interval(0.0, 2.0);
  EXPECT_EQ(d.dimension(), 1u);
  EXPECT_DOUBLE_EQ(d.volume(), 2.0);
  EXPECT_DOUBLE_EQ(d.diameter(), 2.0);
  const double inside = 1.5;
  const double edge = 2.0;
  EXPECT_TRUE(d.contains(std::span<const double>{&inside, 1}));
  EXPECT_FALSE(d.contains(std::span<const double>{&edge, 1}));
  EXPECT_THROW(sf::Domain::interval(1.0, 1.0), std::invalid_argument);
}

TEST(Domain, BallAndBox) {
  const sf::Domain disk = sf::Domain::ball({0.0, 0.0}, 1.0);
  EXPECT_NEAR(disk.volume(), std::numbers::pi, 1e-14);
  EXPECT_TRUE(disk.contains(std::vector<double>{0.5, 0.5}));
  EXPECT_FALSE(disk.contains(std::vector<double>{0.8, 0.8}));
  EXPECT_EQ(sf::Domain::ball({0.5}, 0.5).kind(), sf::Domain::interval(0.0, 1.0).kind());
  const std::vector<double> lo{0.0, 0.0};
  const std::vector<double> hi{1.0, 1.0};
  EXPECT_THROW(sf::Domain::box(lo, hi), std::invalid_argument);
}

TEST(Domain, UniformSamplesStayInside) {
  const sf::Domain ball = sf::Domain::ball({1.0, -1.0, 0.5}, 0.3);
  sf::RngStream rng{1, 0};
  std::vector<double> x(3);
  double mean0 = 0.0;
  for (int i = 0; i < 20000; ++i) {
    ball.sample_uniform(rng, x);
    ASSERT_TRUE(ball.contains(x));
    mean0 += x[0];
  }
  EXPECT_NEAR(mean0 / 20000.0, 1.0, 0.005);
}

TEST(Field, FunctionFieldAndCombination) {
  auto f = std::make_shared<sf::FunctionField>(1, [](std::span<const double> x) { return x[0]; });
  auto g = std::make_shared<sf::FunctionField>(1, [](std::span<const double> x) { return x[0] * x[0]; });
  const sf::LinearCombinationField h{2.0, f, -1.0, g};
  const double x = 3.0;
  EXPECT_DOUBLE_EQ(h(std::span<const double>{&x, 1}), -3.0);
  EXPECT_THROW(f->evaluate(sf::PointSet{2, {0.0, 0.0}}), std::invalid_argument);
}

TEST(Field, NearestNeighbor) {
  sf::FieldSample sample{sf::PointSet::from_values({0.0, 1.0, 2.0}), {10.0, 20.0, 30.0}, std::nullopt};
  const sf::NearestNeighborField nn{sample};
  for (const auto& [x, want] : std::vector<std::pair<double, double>>{{-1.0, 10.0}, {0.4, 10.0}, {0.6, 20.0}, {5.0, 30.0}}) {
    EXPECT_EQ(nn(std::span<const double>{&x, 1}), want);
  }
}

TEST(FieldIo, RoundTripIsExact) {
  sf::FieldSample sample{sf::PointSet{2, {0.1, -0.2, 1.0 / 3.0, 2e-300}}, {std::numbers::pi, -1e300}, std::nullopt};
  std::stringstream buffer;
  sf::write_field_csv(buffer, sample);
  const std::string text = buffer.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "x_1,x_2,value");
  const sf::FieldSample back = sf::read_field_csv(buffer);
  EXPECT_EQ(back.grid.coords(), sample.grid.coords());
  EXPECT_EQ(back.values, sample.values);
}

TEST(FieldIo, RejectsMalformedInput) {
  std::stringstream no_header{"1,2\n"};
  EXPECT_THROW(sf::read_field_csv(no_header), std::runtime_error);
  std::stringstream short_row{"x_1,value\n0.5\n"};
  EXPECT_THROW(sf::read_field_csv(short_row), std::runtime_error);
}

TEST(FieldIo, FormatDoubleShortest) {
  EXPECT_EQ(sf::format_double(0.1), "0.1");
  EXPECT_EQ(sf::format_double(-2.0), "-2");
  EXPECT_EQ(std::stod(sf::format_double(1.0 / 3.0)), 1.0 / 3.0);
}

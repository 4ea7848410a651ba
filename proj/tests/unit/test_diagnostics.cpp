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

#include "stablefield/diagnostics.hpp"

namespace sf = stablefield;

namespace {

sf::PointSet normal_sample(std::size_t n, std::uint64_t seed, double shift = 0.0) {
  sf::RngStream rng{seed, 0};
  sf::PointSet p{1};
  for (std::size_t i = 0; i < n; ++i) {
    p.push_back(std::vector<double>{rng.normal() + shift});
  }
  return p;
}

sf::ConvergenceReport report(std::vector<sf::ConvergenceRow> rows) {
  sf::ConvergenceReport r;
  r.rows = std::move(rows);
  return r;
}

}  // namespace

TEST(EnergyDistance, PointMasses) {
  const sf::PointSet a{1, std::vector<double>(50, 0.0)};
  const sf::PointSet b{1, std::vector<double>(70, 1.0)};
  EXPECT_DOUBLE_EQ(sf::energy_distance(a, b), 2.0);
  EXPECT_EQ(sf::energy_distance(a, a), 0.0);
}

TEST(EnergyDistance, SameLawIsSmall) {
  const double same = sf::energy_distance(normal_sample(2000, 1), normal_sample(2000, 2));
  const double shifted = sf::energy_distance(normal_sample(2000, 1), normal_sample(2000, 2, 1.0));
  EXPECT_LT(same, 0.01);
  EXPECT_GT(shifted, 0.3);
}

TEST(EnergyDistance, RejectsBadSamples) {
  EXPECT_THROW(sf::energy_distance(sf::PointSet{1}, normal_sample(3, 1)), std::invalid_argument);
  EXPECT_THROW(sf::energy_distance(sf::PointSet{2, {0.0, 0.0}}, normal_sample(3, 1)), std::invalid_argument);
}

TEST(EnergyDistanceTest, BaselineAndBootstrap) {
  const auto a = normal_sample(300, 3);
  const auto b = normal_sample(300, 4, 1.0);
  const auto t = sf::energy_distance_test(a, b, 100, 100, sf::RngStream{5, 0});
  EXPECT_NEAR(t.statistic, sf::energy_distance(a, b), 1e-6 * t.statistic);
  EXPECT_GT(t.bootstrap_se, 0.0);
  EXPECT_LT(t.baseline, t.statistic / 5.0);
  EXPECT_EQ(t.size_a, 300u);
}

TEST(ConvergenceStudy, ConstantSamplerGivesZero) {
  sf::ConvergenceStudyConfig config;
  config.widths = {4, 8};
  config.reference_width = 16;
  config.reps = 20;
  config.bootstrap = 10;
  config.permutations = 10;
  const auto r = sf::fdd_convergence_study(sf::constant_sampler(1, 1.0), sf::PointSet::from_values({0.0, 0.5}),
                                           config, sf::RngStream{1, 0});
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.statistic, 0.0);
    EXPECT_EQ(row.baseline, 0.0);
  }
  EXPECT_TRUE(sf::convergence_verdict(r).passed);
}

TEST(ConvergenceVerdict, HandMadeReports) {
  EXPECT_TRUE(sf::convergence_verdict(report({{8, 0.5, 0.1, 0.01, 0}, {16, 0.1, 0.05, 0.06, 0}})).passed);
  // Increase beyond two pooled standard errors.
  EXPECT_FALSE(sf::convergence_verdict(report({{8, 0.1, 0.01, 0.1, 0}, {16, 0.2, 0.01, 0.1, 0}})).passed);
  // Final value above twice the baseline.
  EXPECT_FALSE(sf::convergence_verdict(report({{8, 0.5, 0.1, 0.01, 0}, {16, 0.3, 0.1, 0.1, 0}})).passed);
  EXPECT_FALSE(sf::convergence_verdict(report({})).passed);
}

TEST(TnVerdict, RequiresStrictDecrease) {
  sf::TnReport r;
  r.rows = {{3, 0.5, 0, 0, 0}, {4, 0.3, 0, 0, 0}, {5, 0.2, 0, 0, 0}};
  EXPECT_TRUE(sf::tn_verdict(r).passed);
  r.rows[2].median = 0.3;
  EXPECT_FALSE(sf::tn_verdict(r).passed);
}

TEST(LebesgueVerdicts, MonotoneAndUniform) {
  sf::LebesgueReport a;
  a.rows = {{0.1, 1.0, 0.01, 0}, {0.05, 0.5, 0.01, 0}};
  sf::LebesgueReport b = a;
  EXPECT_TRUE(sf::lebesgue_monotone_verdict(a).passed);
  EXPECT_TRUE(sf::lebesgue_uniformity_verdict(a, b).passed);
  b.rows[1].mean = 1.5;
  EXPECT_FALSE(sf::lebesgue_monotone_verdict(b).passed);
  EXPECT_FALSE(sf::lebesgue_uniformity_verdict(a, b).passed);
}

TEST(Modulus, RejectsExponentAtOrAboveAlpha) {
  sf::ModulusConfig config;
  config.network.alpha = 1.2;
  config.network.widths = {16};
  config.p = 1.2;
  config.reps = 10;
  config.distances = sf::default_modulus_distances();
  EXPECT_THROW(sf::modulus_estimate(config, sf::RngStream{1, 0}), std::invalid_argument);
}

TEST(Modulus, SmallRunHasExpectedShape) {
  sf::ModulusConfig config;
  config.network.alpha = 1.5;
  config.network.widths = {64};
  config.p = 0.75;
  config.reps = 50;
  config.distances = {0.1, 0.01, 0.001};
  const auto r = sf::modulus_estimate(config, sf::RngStream{2, 0});
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(std::isfinite(row.mean));
    EXPECT_GE(row.mean, 0.0);
  }
  EXPECT_TRUE(std::isfinite(r.fit.slope));
}

TEST(EnergyScan, ConstantSamplerShapeAndDeterminism) {
  sf::EnergyScanConfig config;
  config.network.alpha = 1.5;
  config.widths = {4, 16};
  config.reps = 8;
  config.grid_points = 64;
  const auto a = sf::energy_bound_scan(config, sf::RngStream{3, 0});
  const auto b = sf::energy_bound_scan(config, sf::RngStream{3, 0});
  ASSERT_EQ(a.rows.size(), 2u);
  EXPECT_EQ(a.rows[1].mean, b.rows[1].mean);
  EXPECT_GE(a.max_min_ratio, 1.0);
}

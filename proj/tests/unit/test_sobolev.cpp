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
#include <memory>

#include "stablefield/domain.hpp"
#include "stablefield/field.hpp"
#include "stablefield/sobolev.hpp"

namespace sf = stablefield;

namespace {

sf::FunctionField identity_field() {
  return sf::FunctionField{1, [](std::span<const double> x) { return x[0]; }};
}

bool passed(const sf::ValidationReport& report, const std::string& name) {
  const sf::ValidationCheck* check = report.find(name);
  EXPECT_NE(check, nullptr) << name;
  return check != nullptr && check->passed;
}

}  // namespace

TEST(SobolevParams, Ranges) {
  EXPECT_NO_THROW((sf::SobolevParams{0.5, 1.0, 1}));
  EXPECT_THROW((sf::SobolevParams{0.0, 1.0, 1}), std::invalid_argument);
  EXPECT_THROW((sf::SobolevParams{1.0, 1.0, 1}), std::invalid_argument);
  EXPECT_THROW((sf::SobolevParams{0.5, 0.0, 1}), std::invalid_argument);
  EXPECT_THROW((sf::SobolevParams{0.5, 0.6, 1}), std::invalid_argument);
  EXPECT_EQ((sf::SobolevParams{0.5, 0.8, 1}).metric_exponent(), 0.8);
  EXPECT_EQ((sf::SobolevParams{0.5, 1.5, 1}).metric_exponent(), 1.0);
}

TEST(ValidateParams, AdmissibleSet) {
  const auto report = sf::validate_params(1, 1.0, 1.5, 0.5, 1.0);
  EXPECT_TRUE(report.all_passed()) << report.failures();
  EXPECT_EQ(report.checks.size(), 6u);
}

TEST(ValidateParams, EachConditionCanFail) {
  EXPECT_FALSE(passed(sf::validate_params(1, 1.2, 1.5, 0.5, 1.0), "lambda_range"));
  EXPECT_FALSE(passed(sf::validate_params(1, 1.0, 2.0, 0.5, 1.0), "alpha_range"));
  EXPECT_FALSE(passed(sf::validate_params(1, 0.5, 0.6, 0.2, 0.7), "alpha_range"));
  EXPECT_FALSE(passed(sf::validate_params(1, 1.0, 1.5, 0.5, 1.6), "p_range"));
  EXPECT_FALSE(passed(sf::validate_params(1, 0.5, 1.5, 0.5, 1.0), "s_range"));
  EXPECT_FALSE(passed(sf::validate_params(1, 1.0, 1.5, 0.1, 0.85), "p_sobolev"));
  const auto report = sf::validate_params(1, 1.0, 1.5, 0.5, 1.6);
  EXPECT_EQ(report.failures(), "p_range");
}

TEST(ValidateParams, NeverThrowsOnNonsense) {
  EXPECT_NO_THROW(sf::validate_params(1, -1.0, 5.0, 2.0, -3.0));
  EXPECT_FALSE(sf::validate_params(1, std::nan(""), 1.5, 0.5, 1.0).all_passed());
}

TEST(ValidateParams, Embeddings) {
  const auto continuous = sf::validate_params(1, 1.0, 1.5, 0.5, 1.0, sf::EmbeddingTarget{0.25, 4.0 / 3.0});
  EXPECT_TRUE(passed(continuous, "embedding_continuous"));
  EXPECT_FALSE(passed(continuous, "embedding_compact"));
  const auto compact = sf::validate_params(1, 1.0, 1.5, 0.5, 1.0, sf::EmbeddingTarget{0.4, 1.2});
  EXPECT_FALSE(passed(compact, "embedding_continuous"));
  EXPECT_TRUE(passed(compact, "embedding_compact"));
  const auto neither = sf::validate_params(1, 1.0, 1.5, 0.5, 1.0, sf::EmbeddingTarget{0.6, 1.2});
  EXPECT_FALSE(passed(neither, "embedding_continuous"));
  EXPECT_FALSE(passed(neither, "embedding_compact"));
}

TEST(GridQuasinorm, ConstantHasZeroSeminorm) {
  const std::vector<double> values(256, 3.0);
  const auto q = sf::quasinorm_grid_1d(values, sf::Domain::interval(0.0, 1.0), {0.5, 1.0, 1});
  EXPECT_EQ(q.seminorm_part, 0.0);
  EXPECT_NEAR(q.lp_part, 3.0, 1e-12);
}

TEST(GridQuasinorm, IdentityOnUnitInterval) {
  const sf::Domain unit = sf::Domain::interval(0.0, 1.0);
  const std::size_t n = 4096;
  const sf::PointSet grid = sf::midpoint_grid(unit, n);
  const std::vector<double> values(grid.coords().begin(), grid.coords().end());
  const auto q = sf::quasinorm_grid_1d(values, unit, {0.5, 1.0, 1});
  EXPECT_NEAR(q.lp_part, 0.5, 1e-6);
  EXPECT_NEAR(q.seminorm_part, 8.0 / 3.0, 0.02 * 8.0 / 3.0);
  EXPECT_LT(q.seminorm_part, 8.0 / 3.0);
  const auto q2 = sf::quasinorm_grid_1d(values, unit, {0.25, 2.0, 1});
  EXPECT_NEAR(q2.seminorm_part, std::sqrt(8.0 / 15.0), 1e-3);
  EXPECT_NEAR(sf::seminorm_power_grid_1d(values, unit, {0.25, 2.0, 1}), 8.0 / 15.0, 1e-3);
}

TEST(GridQuasinorm, KernelMatchesFreeFunction) {
  const sf::Domain d = sf::Domain::interval(-1.0, 1.0);
  const sf::SobolevParams params{0.4, 0.8, 1};
  const sf::GridSeminormKernel kernel{d, 300, params};
  std::vector<double> values(300);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::sin(0.1 * static_cast<double>(i * i));
  }
  const auto a = kernel(values);
  const auto b = sf::quasinorm_grid_1d(values, d, params);
  EXPECT_NEAR(a.total, b.total, 1e-12 * b.total);
  EXPECT_THROW(kernel(std::vector<double>(299, 0.0)), std::invalid_argument);
}

TEST(MonteCarloQuasinorm, IdentityOnUnitInterval) {
  const sf::Domain unit = sf::Domain::interval(0.0, 1.0);
  const auto f = identity_field();
  sf::MonteCarloConfig mc;
  mc.pairs = 200000;
  mc.points = 50000;
  const auto q = sf::quasinorm(f, unit, {0.5, 1.0, 1}, mc, sf::RngStream{4, 0});
  EXPECT_NEAR(q.lp_part, 0.5, 4.0 * q.se_lp);
  EXPECT_NEAR(q.seminorm_part, 8.0 / 3.0, 4.0 * q.se_seminorm);
  EXPECT_NEAR(q.total, 0.5 + 8.0 / 3.0, 0.03);
  EXPECT_EQ(q.pair_count, mc.pairs);
  EXPECT_EQ(q.point_count, mc.points);
}

TEST(MonteCarloQuasinorm, LpPartBelowOne) {
  const auto f = identity_field();
  sf::MonteCarloConfig mc;
  mc.points = 200000;
  const auto e = sf::lp_norm_estimate(f, sf::Domain::interval(0.0, 1.0), {0.5, 0.8, 1}, mc, sf::RngStream{5, 0});
  // (int_0^1 x^0.8)^(1/0.8) = (1/1.8)^1.25
  EXPECT_NEAR(e.value, std::pow(1.0 / 1.8, 1.25), 4.0 * e.standard_error + 1e-9);
  const auto half = sf::lp_norm_estimate(f, sf::Domain::interval(0.0, 1.0), {0.8, 0.6, 1}, mc, sf::RngStream{5, 0});
  EXPECT_NEAR(half.value, std::pow(1.0 / 1.6, 1.0 / 0.6), 4.0 * half.standard_error + 1e-9);
}

TEST(MonteCarloQuasinorm, DistanceToSelfIsZero) {
  const auto f = identity_field();
  sf::MonteCarloConfig mc;
  mc.pairs = 1000;
  mc.points = 1000;
  const auto e = sf::quasi_distance(f, f, sf::Domain::interval(0.0, 1.0), {0.5, 1.0, 1}, mc, sf::RngStream{6, 0});
  EXPECT_EQ(e.value, 0.0);
}

TEST(MonteCarloQuasinorm, SameStreamSameAnswer) {
  const auto f = identity_field();
  sf::MonteCarloConfig mc;
  mc.pairs = 5000;
  mc.points = 5000;
  const sf::Domain disk = sf::Domain::ball({0.0, 0.0}, 1.0);
  const sf::FunctionField g{2, [](std::span<const double> x) { return x[0] * x[1]; }};
  const auto a = sf::quasinorm(g, disk, {0.5, 1.0, 2}, mc, sf::RngStream{7, 0});
  const auto b = sf::quasinorm(g, disk, {0.5, 1.0, 2}, mc, sf::RngStream{7, 0});
  EXPECT_EQ(a.total, b.total);
  EXPECT_THROW(sf::quasinorm(f, disk, {0.5, 1.0, 2}, mc, sf::RngStream{7, 0}), std::invalid_argument);
}

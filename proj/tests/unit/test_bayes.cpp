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

#include "stablefield/bayes.hpp"

namespace sf = stablefield;

namespace {

sf::PosteriorProblem oracle_problem(double u) {
  sf::PosteriorProblem problem;
  problem.network.alpha = 1.0;
  problem.network.widths = {1};
  problem.network.scales = {1.0, 0.0, 5.0, 2.0};
  problem.forward = sf::ForwardOp::point_evals(sf::PointSet::from_values({0.3}), 0.05);
  problem.noise = sf::NoiseModel::gaussian(1.0, 1);
  problem.observation = {u};
  return problem;
}

}  // namespace

TEST(NoiseModel, GaussianLogDensity) {
  const auto g1 = sf::NoiseModel::gaussian(1.0, 1);
  const std::vector<double> zero1{0.0};
  EXPECT_NEAR(g1.log_density(zero1), -0.5 * std::log(2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(g1.log_density(zero1), -0.918939, 1e-6);
  const auto g2 = sf::NoiseModel::gaussian(1.0, 2);
  const std::vector<double> zero2{0.0, 0.0};
  EXPECT_NEAR(g2.log_density(zero2), -1.837877, 1e-6);
  const auto g = sf::NoiseModel::gaussian(0.5, 2);
  const std::vector<double> r{1.0, -0.5};
  const double expected = -std::log(2.0 * std::numbers::pi * 0.25) - (1.0 + 0.25) / (2.0 * 0.25);
  EXPECT_NEAR(g.log_density(r), expected, 1e-14);
}

TEST(NoiseModel, CauchyLogDensity) {
  const auto c = sf::NoiseModel::cauchy(2.0, 2);
  const std::vector<double> r{0.0, 2.0};
  EXPECT_NEAR(c.log_density(r), -std::log(2.0 * std::numbers::pi) - std::log(4.0 * std::numbers::pi), 1e-14);
}

TEST(NoiseModel, Validation) {
  EXPECT_THROW(sf::NoiseModel::gaussian(0.0, 1), std::invalid_argument);
  EXPECT_THROW(sf::NoiseModel::cauchy(-1.0, 1), std::invalid_argument);
  EXPECT_THROW(sf::NoiseModel::gaussian(1.0, 0), std::invalid_argument);
  const auto g = sf::NoiseModel::gaussian(1.0, 2);
  const std::vector<double> r{0.0};
  EXPECT_THROW(g.log_density(r), std::invalid_argument);
}

TEST(ForwardOp, CompileRejectsPointsOutsideDomain) {
  const auto op = sf::ForwardOp::point_evals(sf::PointSet::from_values({2.0}));
  EXPECT_THROW(op.compile(sf::Domain::interval(-1.0, 1.0), {}), std::invalid_argument);
  const auto balls = sf::ForwardOp::local_averages({sf::Ball{{3.0}, 0.1}});
  EXPECT_THROW(balls.compile(sf::Domain::interval(-1.0, 1.0), {}), std::invalid_argument);
}

TEST(ForwardOp, LinearFunctionalsOfIdentity) {
  const sf::FunctionField f{1, [](std::span<const double> x) { return x[0]; }};
  const sf::Domain d = sf::Domain::interval(-1.0, 1.0);
  EXPECT_NEAR(sf::ForwardOp::point_evals(sf::PointSet::from_values({0.3, -0.2})).compile(d, {}).apply(f)[1], -0.2,
              1e-15);
  EXPECT_NEAR(sf::ForwardOp::point_evals(sf::PointSet::from_values({0.3}), 0.05).compile(d, {}).apply(f)[0], 0.3,
              1e-14);
  EXPECT_NEAR(sf::ForwardOp::local_averages({sf::Ball{{-0.95}, 0.1}}).compile(d, {}).apply(f)[0], -0.925, 1e-14);
  const auto composite = sf::ForwardOp::composite(
      {sf::ForwardOp::local_averages({sf::Ball{{0.5}, 0.2}})},
      [](std::span<const double> v) { return std::vector<double>{std::tanh(v[0])}; }, 1, 1.0);
  EXPECT_NEAR(composite.compile(d, {}).apply(f)[0], std::tanh(0.5), 1e-14);
}

TEST(Posterior, FlatLikelihoodGivesPrior) {
  auto problem = oracle_problem(0.0);
  problem.network.alpha = 1.5;
  problem.network.widths = {16};
  problem.noise = sf::NoiseModel::gaussian(1e6, 1);
  const auto e = sf::posterior_importance(problem, 16, 2000, sf::RngStream{1, 0});
  EXPECT_NEAR(e.ess, 2000.0, 1e-3);
  const auto post = sf::posterior_expectation(e, 0);
  const auto prior = sf::prior_expectation(e, 0);
  EXPECT_NEAR(post.value, prior.value, 1e-9);
  const auto w = e.normalized_weights();
  for (const double wi : w) {
    EXPECT_NEAR(wi, 1.0 / 2000.0, 1e-11);
  }
}

TEST(Posterior, ConstantFunctional) {
  const auto problem = oracle_problem(0.7);
  const auto e = sf::posterior_importance(problem, 1, 500, sf::RngStream{2, 0});
  const std::vector<double> ones(e.size(), 1.0);
  EXPECT_NEAR(sf::posterior_expectation(e, ones).value, 1.0, 1e-12);
  EXPECT_GT(e.ess, 1.0);
  EXPECT_LE(e.ess, 500.0);
}

TEST(Posterior, Deterministic) {
  auto problem = oracle_problem(0.7);
  problem.network.widths = {32};
  const auto a = sf::posterior_importance(problem, 32, 300, sf::RngStream{3, 0});
  const auto b = sf::posterior_importance(problem, 32, 300, sf::RngStream{3, 0});
  EXPECT_EQ(a.log_weights, b.log_weights);
  EXPECT_EQ(a.log_normalizer, b.log_normalizer);
}

TEST(Oracle, SymmetricObservationGivesZeroMean) {
  const auto r = sf::tiny_grid_oracle(oracle_problem(0.0), 64);
  ASSERT_EQ(r.means.size(), 1u);
  EXPECT_NEAR(r.means[0], 0.0, 1e-12);
}

TEST(Oracle, ShrinksTowardPriorMean) {
  const auto r = sf::tiny_grid_oracle(oracle_problem(0.7), 96);
  EXPECT_GT(r.means[0], 0.0);
  EXPECT_LT(r.means[0], 0.7);
  EXPECT_TRUE(std::isfinite(r.log_evidence));
}

TEST(Oracle, ScopeErrors) {
  auto wide = oracle_problem(0.7);
  wide.network.widths = {2};
  EXPECT_THROW(sf::tiny_grid_oracle(wide, 64), std::invalid_argument);
  auto biased = oracle_problem(0.7);
  biased.network.scales.sigma_b = 1.0;
  EXPECT_THROW(sf::tiny_grid_oracle(biased, 64), std::invalid_argument);
  EXPECT_THROW(sf::tiny_grid_oracle(oracle_problem(0.7), 63), std::invalid_argument);
  EXPECT_THROW(sf::tiny_grid_oracle(oracle_problem(0.7), 6), std::invalid_argument);
  auto nonlinear = oracle_problem(0.7);
  nonlinear.functionals = {sf::ForwardOp::composite(
      {sf::ForwardOp::local_averages({sf::Ball{{0.0}, 0.1}})},
      [](std::span<const double> v) { return std::vector<double>{std::tanh(v[0])}; }, 1, 1.0)};
  EXPECT_THROW(sf::tiny_grid_oracle(nonlinear, 64), std::invalid_argument);
}

TEST(PosteriorConvergence, ShapeAndValidation) {
  auto problem = oracle_problem(0.7);
  problem.network.alpha = 1.5;
  problem.network.widths = {4};
  const auto r = sf::posterior_convergence_study(problem, {4, 8}, 16, 200, sf::RngStream{4, 0});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.reference.width, 16u);
  for (const auto& row : r.rows) {
    EXPECT_NEAR(row.discrepancy, std::abs(row.means[0] - r.reference.means[0]), 1e-15);
  }
  EXPECT_THROW(sf::posterior_convergence_study(problem, {8, 4}, 16, 50, sf::RngStream{4, 0}), std::invalid_argument);
  EXPECT_THROW(sf::posterior_convergence_study(problem, {4, 8}, 6, 50, sf::RngStream{4, 0}), std::invalid_argument);
}

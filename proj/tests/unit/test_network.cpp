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
#include <vector>

#include "stablefield/network.hpp"
#include "stablefield/stable.hpp"

namespace sf = stablefield;

namespace {

sf::Matrix filled(std::size_t r, std::size_t c, std::vector<double> values) {
  sf::Matrix m(r, c);
  m.data = std::move(values);
  return m;
}

sf::NetworkConfig config(double alpha, std::vector<std::size_t> widths, std::size_t d = 1) {
  sf::NetworkConfig c;
  c.alpha = alpha;
  c.input_dim = d;
  c.widths = std::move(widths);
  return c;
}

}  // namespace

TEST(NetworkConfig, Validation) {
  EXPECT_NO_THROW(config(1.5, {4}).validate());
  EXPECT_THROW(config(2.0, {4}).validate(), std::invalid_argument);
  EXPECT_THROW(config(0.0, {4}).validate(), std::invalid_argument);
  EXPECT_THROW(config(1.5, {0}).validate(), std::invalid_argument);
  EXPECT_THROW(config(1.5, {}).validate(), std::invalid_argument);
  EXPECT_THROW(config(1.5, {4}, 0).validate(), std::invalid_argument);
  auto c = config(1.5, {4});
  c.scales.sigma_u = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = config(1.5, {4});
  c.scales.sigma_a = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(NetworkConfig, WithWidth) {
  const auto c = config(1.5, {4, 8}).with_width(16);
  EXPECT_EQ(c.widths, (std::vector<std::size_t>{16, 16}));
  EXPECT_EQ(c.depth(), 2u);
  EXPECT_FALSE(c.shallow());
}

TEST(Network, ShallowSingleNeuron) {
  const sf::NetworkRealization net{config(1.7, {1}), filled(1, 1, {1.0}), {filled(1, 1, {1.0})}, {{0.0}, {0.0}}};
  const double x = 0.5;
  EXPECT_DOUBLE_EQ(net.evaluate(std::span<const double>{&x, 1}), 0.5);
}

TEST(Network, ShallowConstantOutput) {
  const sf::NetworkRealization net{config(1.0, {4}), filled(4, 1, {0, 0, 0, 0}), {filled(1, 4, {1, 1, 1, 1})},
                                   {{0, 0, 0, 0}, {2.0}}};
  for (const double x : {-0.9, 0.0, 0.4}) {
    EXPECT_DOUBLE_EQ(net.evaluate(std::span<const double>{&x, 1}), 2.0);
  }
}

TEST(Network, ShallowFormula) {
  // f(x) = H^(-1/alpha) sum v_i phi(u_i x + a_i) + b with H = 2, alpha = 1.5.
  const sf::NetworkRealization net{config(1.5, {2}), filled(2, 1, {2.0, -0.5}), {filled(1, 2, {1.5, -3.0})},
                                   {{0.1, 0.2}, {0.25}}};
  const double x = 0.3;
  const double expected = std::pow(2.0, -1.0 / 1.5) * (1.5 * 0.7 - 3.0 * 0.05) + 0.25;
  EXPECT_NEAR(net.evaluate(std::span<const double>{&x, 1}), expected, 1e-15);
}

TEST(Network, DeepCollapsesWhenLastLayerIsZero) {
  const sf::NetworkRealization net{config(1.2, {2, 3}),
                                   filled(2, 1, {1.0, -2.0}),
                                   {filled(3, 2, {1, 2, 3, 4, 5, 6}), filled(1, 3, {0, 0, 0})},
                                   {{0.1, 0.2}, {0.3, 0.4, 0.5}, {0.7}}};
  for (const double x : {-1.0, 0.0, 0.6}) {
    EXPECT_DOUBLE_EQ(net.evaluate(std::span<const double>{&x, 1}), 0.7);
  }
}

TEST(Network, DeepFormula) {
  auto c = config(1.0, {2, 2});
  c.activation = sf::ActivationSpec::tanh();
  const sf::NetworkRealization net{c,
                                   filled(2, 1, {1.0, -1.0}),
                                   {filled(2, 2, {1.0, 2.0, -1.0, 0.5}), filled(1, 2, {1.0, 1.0})},
                                   {{0.0, 0.5}, {0.1, -0.1}, {0.0}}};
  const double x = 0.2;
  const double f1a = 0.2;
  const double f1b = -0.2 + 0.5;
  const double f2a = 0.5 * (std::tanh(f1a) + 2.0 * std::tanh(f1b)) + 0.1;
  const double f2b = 0.5 * (-std::tanh(f1a) + 0.5 * std::tanh(f1b)) - 0.1;
  const double expected = 0.5 * (std::tanh(f2a) + std::tanh(f2b));
  EXPECT_NEAR(net.evaluate(std::span<const double>{&x, 1}), expected, 1e-15);
}

TEST(Network, RejectsInconsistentDimensions) {
  EXPECT_THROW((sf::NetworkRealization{config(1.5, {2}), filled(3, 1, {1, 2, 3}), {filled(1, 2, {1, 1})},
                                       {{0, 0}, {0}}}),
               std::invalid_argument);
  const sf::NetworkRealization net{config(1.5, {1}), filled(1, 1, {1.0}), {filled(1, 1, {1.0})}, {{0.0}, {0.0}}};
  const std::vector<double> x2{0.1, 0.2};
  EXPECT_THROW(net.evaluate(x2), std::invalid_argument);
}

TEST(SampleNetwork, DeterministicGivenStream) {
  const auto c = config(1.3, {64, 32}, 2);
  const auto a = sf::sample_network(c, sf::RngStream{5, 9});
  const auto b = sf::sample_network(c, sf::RngStream{5, 9});
  EXPECT_EQ(a.input_weights().data, b.input_weights().data);
  EXPECT_EQ(a.hidden_weights()[0].data, b.hidden_weights()[0].data);
  EXPECT_EQ(a.biases(), b.biases());
}

TEST(SampleNetwork, ZeroOutputBiasScale) {
  auto c = config(1.3, {32});
  c.scales.sigma_b = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_EQ(sf::sample_network(c, sf::RngStream{s, 0}).output_bias(), 0.0);
  }
  c.scales.sigma_b = 1.0;
  EXPECT_NE(sf::sample_network(c, sf::RngStream{1, 0}).output_bias(), 0.0);
}

TEST(SampleNetwork, NarrowIsPrefixOfWide) {
  const sf::RngStream rng{77, 0};
  const auto narrow = sf::sample_network(config(1.2, {8}), rng);
  const auto wide = sf::sample_network(config(1.2, {32}), rng);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(narrow.input_weights()(i, 0), wide.input_weights()(i, 0));
    EXPECT_EQ(narrow.biases()[0][i], wide.biases()[0][i]);
    EXPECT_EQ(narrow.hidden_weights()[0](0, i), wide.hidden_weights()[0](0, i));
  }
  EXPECT_EQ(narrow.output_bias(), wide.output_bias());
}

TEST(SampleNetwork, OuterWeightTailIndex) {
  auto c = config(1.5, {1000}, 2);
  std::vector<double> v;
  for (std::uint64_t r = 0; r < 100; ++r) {
    const auto net = sf::sample_network(c, sf::RngStream{3, r});
    const auto& data = net.hidden_weights()[0].data;
    v.insert(v.end(), data.begin(), data.end());
  }
  EXPECT_NEAR(sf::hill_tail_estimate(v, 2000), 1.5, 0.15);
}

TEST(EvaluateGrid, MatchesPointwise) {
  const auto net = sf::sample_network(config(1.2, {300}, 2), sf::RngStream{8, 0});
  sf::PointSet grid{2};
  for (int i = 0; i < 150; ++i) {
    grid.push_back(std::vector<double>{-0.7 + 0.01 * i, 0.3 - 0.004 * i});
  }
  const sf::FieldSample sample = sf::evaluate_grid(net, grid);
  ASSERT_EQ(sample.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_DOUBLE_EQ(sample.values[i], net.evaluate(grid[i]));
  }
}

TEST(EvaluateGrid, DeepMatchesPointwise) {
  auto c = config(1.2, {40, 20});
  c.activation = sf::ActivationSpec::tanh();
  const auto net = sf::sample_network(c, sf::RngStream{9, 0});
  const sf::PointSet grid = sf::PointSet::linspace(-1.0, 1.0, 130);
  const sf::FieldSample sample = sf::evaluate_grid(net, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_DOUBLE_EQ(sample.values[i], net.evaluate(grid[i]));
  }
}

TEST(EvaluateGrid, SingleAndEmpty) {
  const auto net = sf::sample_network(config(1.2, {10}), sf::RngStream{10, 0});
  const sf::PointSet one = sf::PointSet::from_values({0.25});
  EXPECT_DOUBLE_EQ(sf::evaluate_grid(net, one).values[0], net.evaluate(one[0]));
  EXPECT_EQ(sf::evaluate_grid(net, sf::PointSet{1}).size(), 0u);
}

TEST(EvaluateGrid, FigureSetupIsFinite) {
  sf::NetworkConfig c = config(1.5, {100000});
  c.scales = {1.0, 0.0, 5.0, 2.0};
  const auto net = sf::sample_network(c, sf::RngStream{11, 0});
  const sf::FieldSample sample = sf::evaluate_grid(net, sf::PointSet::linspace(-1.0, 1.0, 2001));
  ASSERT_EQ(sample.size(), 2001u);
  for (const double v : sample.values) {
    ASSERT_TRUE(std::isfinite(v));
  }
}

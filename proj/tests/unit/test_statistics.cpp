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

#include "stablefield/rng.hpp"
#include "stablefield/statistics.hpp"

namespace sf = stablefield;

TEST(RunningMoments, MatchesTwoPass) {
  const std::vector<double> x{1.0, 4.0, 2.0, 8.0, 5.0};
  sf::RunningMoments m;
  for (const double v : x) {
    m.add(v);
  }
  EXPECT_DOUBLE_EQ(m.mean(), 4.0);
  EXPECT_DOUBLE_EQ(m.variance(), 7.5);
  EXPECT_NEAR(m.standard_error(), std::sqrt(7.5 / 5.0), 1e-14);
}

TEST(RunningMoments, MergeEqualsSequential) {
  sf::RunningMoments a;
  sf::RunningMoments b;
  sf::RunningMoments all;
  for (int i = 0; i < 10; ++i) {
    const double v = i * i - 3.0 * i;
    (i < 4 ? a : b).add(v);
    all.add(v);
  }
  a.merge(b);
  EXPECT_EQ(a.count(), all.count());
  EXPECT_NEAR(a.mean(), all.mean(), 1e-12);
  EXPECT_NEAR(a.variance(), all.variance(), 1e-12);
}

TEST(Quantiles, SmallSamples) {
  const std::vector<double> x{5.0, 1.0, 3.0, 2.0, 4.0};
  EXPECT_DOUBLE_EQ(sf::median(x), 3.0);
  EXPECT_DOUBLE_EQ(sf::mean(x), 3.0);
  EXPECT_DOUBLE_EQ(sf::quantile(x, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(sf::quantile(x, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(sf::quantile(x, 0.25), 2.0);
  const std::vector<double> even{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(sf::median(even), 2.5);
}

TEST(FitLine, ExactLine) {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  const sf::LinearFit fit = sf::fit_line(x, y);
  EXPECT_NEAR(fit.slope, 2.0, 1e-14);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-14);
  EXPECT_NEAR(fit.slope_standard_error, 0.0, 1e-12);
}

TEST(FitLine, NoisyLineCoversTruth) {
  sf::RngStream rng{1, 0};
  std::vector<double> x;
  std::vector<double> y;
  for (int i = 0; i < 50; ++i) {
    x.push_back(i * 0.1);
    y.push_back(0.3 * i * 0.1 + 0.05 * rng.normal());
  }
  const sf::LinearFit fit = sf::fit_line(x, y);
  EXPECT_LT(fit.slope_ci_low, 0.3);
  EXPECT_GT(fit.slope_ci_high, 0.3);
  EXPECT_LT(fit.slope_p_value, 1e-6);
}

TEST(KsTwoSample, SameAndShifted) {
  sf::RngStream rng{2, 0};
  std::vector<double> a(5000);
  std::vector<double> b(5000);
  std::vector<double> c(5000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.normal();
    b[i] = rng.normal();
    c[i] = rng.normal() + 0.2;
  }
  EXPECT_GT(sf::ks_two_sample(a, b).p_value, 1e-3);
  EXPECT_LT(sf::ks_two_sample(a, c).p_value, 1e-6);
}

TEST(KolmogorovSurvival, KnownValues) {
  EXPECT_NEAR(sf::kolmogorov_survival(1.36), 0.0494, 5e-4);
  EXPECT_NEAR(sf::kolmogorov_survival(1.63), 0.0098, 5e-4);
}

TEST(Logspace, Endpoints) {
  const std::vector<double> v = sf::logspace(1e-3, 1.0, 4);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_NEAR(v[0], 1e-3, 1e-15);
  EXPECT_NEAR(v[1], 1e-2, 1e-15);
  EXPECT_NEAR(v[3], 1.0, 1e-14);
}

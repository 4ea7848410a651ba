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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "stablefield/stable.hpp"
#include "stablefield/statistics.hpp"

namespace sf = stablefield;

namespace {

std::vector<double> draws(double alpha, double sigma, std::size_t n, std::uint64_t seed) {
  std::vector<double> out(n);
  sf::RngStream rng{seed, 0};
  sf::sample_sas(sf::StableParams{alpha, sigma}, rng, out);
  return out;
}

// E|X|^p for X ~ SaS(alpha, 1), -1 < p < alpha.
double sas_absolute_moment(double alpha, double p) {
  return std::pow(2.0, p) * std::tgamma((1.0 + p) / 2.0) * std::tgamma(1.0 - p / alpha) /
         (std::sqrt(std::numbers::pi) * std::tgamma(1.0 - p / 2.0));
}

}  // namespace

TEST(StableParams, RejectsOutOfRange) {
  EXPECT_THROW((sf::StableParams{0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW((sf::StableParams{2.1, 1.0}), std::invalid_argument);
  EXPECT_THROW((sf::StableParams{1.0, -1.0}), std::invalid_argument);
  EXPECT_THROW((sf::StableParams{1.0, 0.0}), std::invalid_argument);
  EXPECT_NO_THROW((sf::StableParams{2.0, 0.5}));
}

TEST(SampleSas, CauchyMedianIsZero) {
  std::vector<double> x = draws(1.0, 1.0, 100000, 11);
  EXPECT_NEAR(sf::median(x), 0.0, 0.02);
}

TEST(SampleSas, GaussianVarianceIsTwoSigmaSquared) {
  const std::vector<double> x = draws(2.0, 1.0, 1000000, 12);
  double s2 = 0.0;
  for (const double v : x) {
    s2 += v * v;
  }
  EXPECT_NEAR(s2 / static_cast<double>(x.size()), 2.0, 0.01);
}

TEST(SampleSas, CharacteristicFunctionAtAlpha15) {
  const std::vector<double> x = draws(1.5, 1.0, 1000000, 13);
  EXPECT_NEAR(sf::empirical_char_fn(x, 1.0), std::exp(-1.0), 3e-3);
}

TEST(SampleSas, CharacteristicFunctionAtAlpha07) {
  const std::vector<double> x = draws(0.7, 1.0, 1000000, 14);
  EXPECT_NEAR(sf::empirical_char_fn(x, 0.5), std::exp(-std::pow(0.5, 0.7)), 3e-3);
}

TEST(SampleSas, ScaleParameter) {
  const std::vector<double> x = draws(1.3, 2.5, 400000, 15);
  EXPECT_NEAR(sf::empirical_char_fn(x, 0.4), std::exp(-std::pow(2.5 * 0.4, 1.3)), 4e-3);
}

TEST(SampleSas, NearCauchyBranchIsContinuous) {
  const std::vector<double> x = draws(1.0 + 5e-7, 1.0, 400000, 16);
  EXPECT_NEAR(sf::empirical_char_fn(x, 1.0), std::exp(-1.0), 4e-3);
}

TEST(SampleSas, FractionalAbsoluteMoment) {
  for (const double alpha : {0.8, 1.2, 1.7}) {
    const double p = alpha / 4.0;
    const std::vector<double> x = draws(alpha, 1.0, 400000, 17);
    const double exact = sas_absolute_moment(alpha, p);
    EXPECT_NEAR(sf::absolute_moment(x, p), exact, 0.01 * exact) << "alpha " << alpha;
  }
}

TEST(SampleSas, SmallAlphaStaysFinite) {
  const std::vector<double> x = draws(0.2, 1.0, 20000, 18);
  for (const double v : x) {
    ASSERT_FALSE(std::isnan(v));
  }
  EXPECT_NEAR(sf::empirical_char_fn(x, 1.0), std::exp(-1.0), 0.015);
}

TEST(CharFn, ClosedForms) {
  EXPECT_NEAR(sf::char_fn(sf::StableParams{1.0, 1.0}, 1.0), 0.367879441171442, 1e-15);
  EXPECT_EQ(sf::char_fn(sf::StableParams{0.7, 3.0}, 0.0), 1.0);
  EXPECT_NEAR(sf::char_fn(sf::StableParams{2.0, 1.0}, 2.0), 0.0183156388887342, 1e-15);
}

TEST(EmpiricalCharFn, SmallSamples) {
  const std::vector<double> zeros{0.0, 0.0, 0.0};
  EXPECT_EQ(sf::empirical_char_fn(zeros, 5.0), 1.0);
  const std::vector<double> pis{std::numbers::pi, -std::numbers::pi};
  EXPECT_NEAR(sf::empirical_char_fn(pis, 1.0), -1.0, 1e-15);
  EXPECT_THROW(sf::empirical_char_fn(std::vector<double>{}, 1.0), std::invalid_argument);
}

TEST(EmpiricalCharFn, ImaginaryPartVanishesBySymmetry) {
  const std::vector<double> x = draws(1.2, 1.0, 200000, 20);
  EXPECT_NEAR(sf::empirical_char_fn_complex(x, 1.0).imag(), 0.0, 5e-3);
}

TEST(AggregateStable, SingleCoefficientMatchesSampler) {
  const sf::StableParams params{1.4, 1.0};
  sf::RngStream a{21, 0};
  sf::RngStream b{21, 0};
  const std::vector<double> one{1.0};
  std::vector<double> agg(2000);
  std::vector<double> direct(2000);
  for (std::size_t i = 0; i < agg.size(); ++i) {
    agg[i] = sf::aggregate_stable(params, one, a);
    direct[i] = sf::sample_sas(params, b);
  }
  EXPECT_GT(sf::ks_two_sample(agg, direct).p_value, 1e-3);
}

TEST(AggregateStable, ZeroCoefficients) {
  sf::RngStream rng{22, 0};
  const std::vector<double> zeros{0.0, 0.0};
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sf::aggregate_stable(sf::StableParams{1.2, 1.0}, zeros, rng), 0.0);
  }
  EXPECT_THROW(sf::aggregate_stable(sf::StableParams{1.2, 1.0}, std::vector<double>{}, rng),
               std::invalid_argument);
}

TEST(LAlphaNorm, MatchesDefinition) {
  const std::vector<double> c{1.0, 2.0, -1.0};
  EXPECT_NEAR(sf::l_alpha_norm(c, 1.2), std::pow(2.0 + std::pow(2.0, 1.2), 1.0 / 1.2), 1e-14);
  EXPECT_NEAR(sf::l_alpha_norm(c, 2.0), std::sqrt(6.0), 1e-14);
}

TEST(HillEstimator, ParetoOracle) {
  sf::RngStream rng{23, 0};
  std::vector<double> x(1000000);
  for (double& v : x) {
    v = 1.0 / rng.uniform();  // Pareto with index 1
  }
  EXPECT_NEAR(sf::hill_tail_estimate(x, 10000), 1.0, 0.05);
}

TEST(HillEstimator, CauchyTail) {
  const std::vector<double> x = draws(1.0, 1.0, 1000000, 24);
  EXPECT_NEAR(sf::hill_tail_estimate(x, 10000), 1.0, 0.1);
}

TEST(HillEstimator, ConstantSampleIsInfinite) {
  const std::vector<double> c(100, 3.0);
  EXPECT_TRUE(std::isinf(sf::hill_tail_estimate(c, 10)));
  const std::vector<double> z(100, 0.0);
  EXPECT_TRUE(std::isinf(sf::hill_tail_estimate(z, 10)));
  EXPECT_THROW(sf::hill_tail_estimate(c, 0), std::invalid_argument);
  EXPECT_THROW(sf::hill_tail_estimate(c, 100), std::invalid_argument);
}

TEST(StableDensity, ClosedFormsAndNumericPath) {
  for (const double x : {0.0, 0.3, 1.0, 4.0, 25.0}) {
    EXPECT_NEAR(sf::stable_density(sf::StableParams{1.0, 1.0}, x), 1.0 / (std::numbers::pi * (1.0 + x * x)), 1e-14);
    EXPECT_NEAR(sf::stable_density(sf::StableParams{2.0, 1.0}, x),
                std::exp(-x * x / 4.0) / std::sqrt(4.0 * std::numbers::pi), 1e-14);
    EXPECT_NEAR(sf::detail::stable_density_numeric(1.0, x), 1.0 / (std::numbers::pi * (1.0 + x * x)), 1e-7);
  }
}

TEST(StableDensity, IntegratesToOne) {
  for (const double alpha : {1.0, 1.2, 1.8}) {
    const sf::StableParams params{alpha, 1.0};
    // x = tan t maps the line to (-pi/2, pi/2).
    constexpr int n = 4000;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = -std::numbers::pi / 2 + (i + 0.5) * std::numbers::pi / n;
      const double c = std::cos(t);
      total += sf::stable_density(params, std::tan(t)) / (c * c) * std::numbers::pi / n;
    }
    EXPECT_NEAR(total, 1.0, 2e-3) << "alpha " << alpha;
  }
}

TEST(StableDensity, ScaleCovariance) {
  const sf::StableParams unit{1.5, 1.0};
  const sf::StableParams scaled{1.5, 3.0};
  EXPECT_NEAR(sf::stable_density(scaled, 1.2), sf::stable_density(unit, 0.4) / 3.0, 1e-10);
}

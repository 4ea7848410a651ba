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

#ifndef STABLEFIELD_STATISTICS_HPP
#define STABLEFIELD_STATISTICS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace stablefield {

/// Streaming mean/variance (Welford), mergeable in a fixed order (Chan et al.).
class RunningMoments {
 public:
  void add(double x) noexcept {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  void merge(const RunningMoments& other) noexcept;

  std::size_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two observations.
  double variance() const noexcept {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double standard_error() const noexcept;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov p-value
/// (effective-size correction of Stephens).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda) noexcept;

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_standard_error = 0.0;
  /// Two-sided 95% interval for the slope (Student t with n-2 dof).
  double slope_ci_low = 0.0;
  double slope_ci_high = 0.0;
  /// Two-sided p-value for H0: slope = 0.
  double slope_p_value = 1.0;
};

/// Ordinary least squares y = intercept + slope x. Requires at least three points.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> values);
double median(std::span<const double> values);
/// Linear-interpolated empirical quantile, q in [0, 1].
double quantile(std::span<const double> values, double q);

/// Standard error of the sample mean.
double standard_error(std::span<const double> values);

/// Log-spaced grid of n points from lo to hi inclusive.
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace stablefield

#endif  // STABLEFIELD_STATISTICS_HPP

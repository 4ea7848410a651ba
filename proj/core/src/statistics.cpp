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

#include "stablefield/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace stablefield {

void RunningMoments::merge(const RunningMoments& other) noexcept {
  if (other.count_ == 0) {
    return;
  }
  if (count_ == 0) {
    *this = other;
    return;
  }
  const auto n_a = static_cast<double>(count_);
  const auto n_b = static_cast<double>(other.count_);
  const double n = n_a + n_b;
  const double delta = other.mean_ - mean_;
  mean_ += delta * n_b / n;
  m2_ += other.m2_ + delta * delta * n_a * n_b / n;
  count_ += other.count_;
}

double RunningMoments::standard_error() const noexcept {
  return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
}

double kolmogorov_survival(double lambda) noexcept {
  if (lambda < 0.2) {
    return 1.0;
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) {
      break;
    }
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample needs two non-empty samples");
  }
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto n = static_cast<double>(x.size());
  const auto m = static_cast<double>(y.size());

  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double value = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == value) ++i;
    while (j < y.size() && y[j] == value) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double effective = std::sqrt(n * m / (n + m));
  const double lambda = (effective + 0.12 + 0.11 / effective) * d;
  return {d, kolmogorov_survival(lambda)};
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw std::invalid_argument("fit_line needs at least three (x, y) pairs of equal length");
  }
  const auto n = static_cast<double>(x.size());
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) {
    throw std::invalid_argument("fit_line: x values are all equal");
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    rss += r * r;
  }
  const double dof = n - 2.0;
  fit.slope_standard_error = std::sqrt(rss / dof / sxx);
  const boost::math::students_t t_dist{dof};
  const double t_crit = boost::math::quantile(t_dist, 0.975);
  fit.slope_ci_low = fit.slope - t_crit * fit.slope_standard_error;
  fit.slope_ci_high = fit.slope + t_crit * fit.slope_standard_error;
  if (fit.slope_standard_error > 0.0) {
    const double t = std::abs(fit.slope) / fit.slope_standard_error;
    fit.slope_p_value = 2.0 * boost::math::cdf(boost::math::complement(t_dist, t));
  } else {
    fit.slope_p_value = fit.slope == 0.0 ? 1.0 : 0.0;
  }
  return fit;
}

double mean(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("mean of an empty range");
  }
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) {
    throw std::invalid_argument("quantile of an empty range");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double position = std::clamp(q, 0.0, 1.0) * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(position));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = position - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

double standard_error(std::span<const double> values) {
  RunningMoments moments;
  for (const double v : values) moments.add(v);
  return moments.standard_error();
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (n == 0 || !(lo > 0.0) || !(hi > 0.0)) {
    throw std::invalid_argument("logspace needs n > 0 and positive endpoints");
  }
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double l0 = std::log(lo);
  const double l1 = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace stablefield

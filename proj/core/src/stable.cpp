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

#include "stablefield/stable.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

namespace stablefield {

namespace {

std::atomic<std::uint64_t> g_saturated{0};

double saturate(double sign, double log_magnitude, double log_sigma) noexcept {
  constexpr double kLogMax = 709.782712893384;  // log(DBL_MAX)
  const double total = log_magnitude + log_sigma;
  if (total >= kLogMax) {
    g_saturated.fetch_add(1, std::memory_order_relaxed);
    return std::copysign(std::numeric_limits<double>::max(), sign);
  }
  return std::copysign(std::exp(total), sign);
}

// Symmetric Chambers-Mallows-Stuck for unit scale, given V ~ U(-pi/2, pi/2) and W ~ Exp(1).
double cms_unit(double alpha, double v, double w) noexcept {
  const double a = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
  const double b = std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
  return a * b;
}

double cms_log_magnitude(double alpha, double v, double w) noexcept {
  return std::log(std::abs(std::sin(alpha * v))) - std::log(std::cos(v)) / alpha +
         (1.0 - alpha) / alpha * (std::log(std::cos((1.0 - alpha) * v)) - std::log(w));
}

}  // namespace

StableParams::StableParams(double alpha, double sigma) : alpha_{alpha}, sigma_{sigma} {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("stability index alpha must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("stable scale sigma must be positive and finite, got " + std::to_string(sigma));
  }
}

double sample_sas(const StableParams& params, RngStream& rng) noexcept {
  const double alpha = params.alpha();
  const double sigma = params.sigma();
  const double v = std::numbers::pi * (rng.uniform() - 0.5);

  if (std::abs(alpha - 1.0) < kCauchyBranchTolerance) {
    return sigma * std::tan(v);
  }
  const double w = rng.exponential();
  if (alpha < kLogSpaceAlphaThreshold) {
    return saturate(v, cms_log_magnitude(alpha, v, w), std::log(sigma));
  }
  const double x = sigma * cms_unit(alpha, v, w);
  if (!std::isfinite(x)) {
    return saturate(v, cms_log_magnitude(alpha, v, w), std::log(sigma));
  }
  return x;
}

void sample_sas(const StableParams& params, RngStream& rng, std::span<double> out) noexcept {
  for (double& x : out) {
    x = sample_sas(params, rng);
  }
}

std::uint64_t saturated_draw_count() noexcept { return g_saturated.load(std::memory_order_relaxed); }

double char_fn(const StableParams& params, double theta) noexcept {
  return std::exp(-std::pow(params.sigma() * std::abs(theta), params.alpha()));
}

std::complex<double> empirical_char_fn_complex(std::span<const double> samples, double theta) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical characteristic function of an empty sample");
  }
  double re = 0.0;
  double im = 0.0;
  for (const double u : samples) {
    re += std::cos(theta * u);
    im += std::sin(theta * u);
  }
  const auto n = static_cast<double>(samples.size());
  return {re / n, im / n};
}

double empirical_char_fn(std::span<const double> samples, double theta) {
  return empirical_char_fn_complex(samples, theta).real();
}

double l_alpha_norm(std::span<const double> coeffs, double alpha) {
  double sum = 0.0;
  for (const double c : coeffs) {
    sum += std::pow(std::abs(c), alpha);
  }
  return std::pow(sum, 1.0 / alpha);
}

double aggregate_stable(const StableParams& params, std::span<const double> coeffs, RngStream& rng) {
  if (coeffs.empty()) {
    throw std::invalid_argument("aggregate_stable needs at least one coefficient");
  }
  double total = 0.0;
  for (const double c : coeffs) {
    const double u = sample_sas(params, rng);
    if (c != 0.0) {
      total += c * u;
    }
  }
  return total;
}

double hill_tail_estimate(std::span<const double> samples, std::size_t k) {
  const std::size_t n = samples.size();
  if (k == 0 || k >= n) {
    throw std::invalid_argument("hill_tail_estimate requires 0 < k < n (k = " + std::to_string(k) +
                                ", n = " + std::to_string(n) + ")");
  }
  std::vector<double> magnitudes(n);
  std::transform(samples.begin(), samples.end(), magnitudes.begin(), [](double x) { return std::abs(x); });
  const auto pivot = magnitudes.begin() + static_cast<std::ptrdiff_t>(n - k - 1);
  std::nth_element(magnitudes.begin(), pivot, magnitudes.end());
  const double threshold = *pivot;
  if (threshold <= 0.0) {
    if (*std::max_element(pivot, magnitudes.end()) <= 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument("hill_tail_estimate: the (k+1)-th largest magnitude is zero");
  }
  double sum = 0.0;
  for (auto it = pivot + 1; it != magnitudes.end(); ++it) {
    sum += std::log(*it / threshold);
  }
  if (sum <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(k) / sum;
}

double absolute_moment(std::span<const double> samples, double p) {
  if (samples.empty()) {
    throw std::invalid_argument("absolute_moment of an empty sample");
  }
  double sum = 0.0;
  for (const double u : samples) {
    sum += std::pow(std::abs(u), p);
  }
  return sum / static_cast<double>(samples.size());
}

namespace detail {

namespace {

constexpr double kTailStart = 25.0;

// (1/pi) sum_k (-1)^(k+1) Gamma(alpha k + 1)/k! sin(k pi alpha / 2) x^(-alpha k - 1), x > 0.
double tail_series(double alpha, double x) {
  const double log_x = std::log(x);
  double sum = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 60; ++k) {
    const double log_mag = std::lgamma(alpha * k + 1.0) - std::lgamma(k + 1.0) - (alpha * k + 1.0) * log_x;
    const double magnitude = std::exp(log_mag);
    if (magnitude > previous) {
      break;  // asymptotic regime: stop at the smallest term
    }
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    sum += sign * magnitude * std::sin(k * std::numbers::pi * alpha / 2.0);
    if (magnitude < 1e-17 * std::abs(sum)) {
      break;
    }
    previous = magnitude;
  }
  return sum / std::numbers::pi;
}

}  // namespace

double stable_density_numeric(double alpha, double x) {
  x = std::abs(x);
  if (x == 0.0) {
    return std::tgamma(1.0 + 1.0 / alpha) / std::numbers::pi;
  }
  if (x >= kTailStart && alpha < 2.0) {
    return tail_series(alpha, x);
  }
  static boost::math::quadrature::ooura_fourier_cos<double> integrator{1e-12};
  const auto kernel = [alpha](double t) { return std::exp(-std::pow(t, alpha)); };
  const auto [value, error] = integrator.integrate(kernel, x);
  (void)error;
  return value / std::numbers::pi;
}

}  // namespace detail

double stable_density(const StableParams& params, double x) {
  const double alpha = params.alpha();
  const double sigma = params.sigma();
  const double z = x / sigma;
  if (std::abs(alpha - 1.0) < kCauchyBranchTolerance) {
    return 1.0 / (std::numbers::pi * sigma * (1.0 + z * z));
  }
  if (alpha == 2.0) {
    return std::exp(-z * z / 4.0) / (2.0 * std::sqrt(std::numbers::pi) * sigma);
  }
  return detail::stable_density_numeric(alpha, z) / sigma;
}

}  // namespace stablefield

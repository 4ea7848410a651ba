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

#ifndef STABLEFIELD_STABLE_HPP
#define STABLEFIELD_STABLE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

#include "stablefield/rng.hpp"

/**
 * \file
 * \brief Symmetric alpha-stable laws: sampling, characteristic functions, densities and
 * tail diagnostics.
 *
 * Convention: SaS(alpha, sigma) has characteristic function exp(-(sigma |theta|)^alpha).
 * For alpha = 2 this is a centered Gaussian with variance 2 sigma^2, not sigma^2.
 */

namespace stablefield {

class StableParams {
 public:
  /// Throws std::invalid_argument unless 0 < alpha <= 2 and sigma > 0.
  StableParams(double alpha, double sigma);

  double alpha() const noexcept { return alpha_; }
  double sigma() const noexcept { return sigma_; }

  /// Same stability index with a different scale.
  StableParams with_sigma(double sigma) const { return StableParams{alpha_, sigma}; }

 private:
  double alpha_;
  double sigma_;
};

/// alpha values closer than this to 1 are sampled through the Cauchy formula.
inline constexpr double kCauchyBranchTolerance = 1e-6;

/// Below this alpha draws are assembled in log-magnitude and converted at the end.
inline constexpr double kLogSpaceAlphaThreshold = 0.3;

/// One draw from SaS(alpha, sigma) by the Chambers-Mallows-Stuck method.
double sample_sas(const StableParams& params, RngStream& rng) noexcept;

/// Fill `out` with iid SaS(alpha, sigma) draws.
void sample_sas(const StableParams& params, RngStream& rng, std::span<double> out) noexcept;

/// Process-wide count of draws that exceeded the double range and were saturated to
/// +-max-finite (only reachable for very small alpha).
std::uint64_t saturated_draw_count() noexcept;

/// exp(-(sigma |theta|)^alpha).
double char_fn(const StableParams& params, double theta) noexcept;

/// Mean of cos(theta u_i). Throws std::invalid_argument on an empty sample.
double empirical_char_fn(std::span<const double> samples, double theta);

/// Mean of exp(i theta u_i); the imaginary part is a symmetry diagnostic.
std::complex<double> empirical_char_fn_complex(std::span<const double> samples, double theta);

/// (sum |c_i|^alpha)^(1/alpha).
double l_alpha_norm(std::span<const double> coeffs, double alpha);

/// sum_i c_i u_i with u_i iid SaS(alpha, sigma). Throws on empty coefficients.
double aggregate_stable(const StableParams& params, std::span<const double> coeffs, RngStream& rng);

/**
 * Hill estimator of the tail index from the k largest |samples|.
 *
 * Returns +infinity when the k largest magnitudes all equal the (k+1)-th (e.g. a constant
 * sample): the empirical tail is flat, i.e. "infinitely light". Throws std::invalid_argument
 * when k == 0, k >= samples.size(), or the (k+1)-th largest magnitude is zero while larger
 * ones are not.
 */
double hill_tail_estimate(std::span<const double> samples, std::size_t k);

/// Mean of |u_i|^p.
double absolute_moment(std::span<const double> samples, double p);

/**
 * Density of SaS(alpha, sigma) at x.
 *
 * Closed forms for alpha = 1 (Cauchy) and alpha = 2 (Gaussian); otherwise the inverse
 * Fourier integral (1/pi) int_0^inf cos(t x) exp(-(sigma t)^alpha) dt, switching to the
 * convergent/asymptotic power series in |x|^(-alpha k - 1) far in the tails.
 */
double stable_density(const StableParams& params, double x);

namespace detail {
/// Inverse-Fourier path of stable_density without the closed-form shortcuts (tests only).
double stable_density_numeric(double alpha, double x);
}  // namespace detail

}  // namespace stablefield

#endif  // STABLEFIELD_STABLE_HPP

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

#ifndef STABLEFIELD_SOBOLEV_HPP
#define STABLEFIELD_SOBOLEV_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stablefield/domain.hpp"
#include "stablefield/field.hpp"
#include "stablefield/rng.hpp"
#include "stablefield/statistics.hpp"

/**
 * \file
 * \brief Sobolev-Slobodeckij quasinorms
 *
 *   ||f||_{W^{s,p}(U)} = ||f||_{L^p(U)} + ( int_{U x U} |f(x) - f(y)|^p / |x - y|^{sp + d} )^{1/p}
 *
 * and the parameter arithmetic that goes with them.
 */

namespace stablefield {

class SobolevParams {
 public:
  /// Throws std::invalid_argument unless s in (0, 1), p > 0 and p > d / (d + s).
  SobolevParams(double s, double p, std::size_t d);

  double s() const noexcept { return s_; }
  double p() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return d_; }
  /// min(p, 1), the exponent that turns the quasinorm into a metric.
  double metric_exponent() const noexcept { return p_ < 1.0 ? p_ : 1.0; }

 private:
  double s_;
  double p_;
  std::size_t d_;
};

struct ValidationCheck {
  std::string name;
  std::string inequality;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_passed() const noexcept;
  /// Names of the failing checks, comma separated.
  std::string failures() const;
  const ValidationCheck* find(const std::string& name) const noexcept;
};

/// Second smoothness-integrability pair (s', p') for the embedding checks.
struct EmbeddingTarget {
  double s = 0.0;
  double p = 0.0;
};

/**
 * Check the admissibility conditions for a network field to lie in W^{s,p}:
 *
 *   lambda_range      0 < lambda <= 1
 *   alpha_range       d/(d+lambda) < alpha < 2
 *   p_range           d/(d+lambda) < p < alpha
 *   s_range           0 < s < lambda
 *   p_sobolev         p > d/(d+s)
 *
 * and, when `target` is given, the embeddings W^{s,p} into W^{s',p'}:
 *
 *   embedding_continuous   p' > p, 0 < s' < s, s' - d/p' = s - d/p
 *   embedding_compact      p' > p, 0 < s' < s, s' - d/p' > s - d/p
 *
 * Never throws.
 */
ValidationReport validate_params(std::size_t d, double lambda, double alpha, double s, double p,
                                 std::optional<EmbeddingTarget> target = std::nullopt);

/// Monte Carlo budget for the quasinorm estimators.
struct MonteCarloConfig {
  std::size_t points = 100000;  ///< draws for the L^p part
  std::size_t pairs = 1000000;  ///< pairs for the seminorm part
  std::size_t chunks = 64;      ///< independent substreams, reduced in index order
  /// Hoelder exponent assumed for the field when tuning the radial proposal; nullopt uses
  /// the exponent min(1, d).
  std::optional<double> assumed_holder = 1.0;
};

/// Exponent gamma of the radial proposal density proportional to r^(gamma - 1) on (0, diam U].
double radial_proposal_exponent(const SobolevParams& params, std::optional<double> assumed_holder) noexcept;

/// (int_U |f|^p)^(1/p) with delta-method standard error.
Estimate lp_norm_estimate(const ScalarField& field, const Domain& domain, const SobolevParams& params,
                          const MonteCarloConfig& mc, const RngStream& rng);

/**
 * Seminorm (not its p-th power) with delta-method standard error.
 *
 * Pairs are drawn as x uniform on U and y = x + r w with w uniform on the unit sphere and
 * r ~ gamma r^(gamma-1) / diam^gamma. Proposals with y outside U contribute zero, which keeps
 * the estimator unbiased for the integral over U x U.
 */
Estimate seminorm_estimate(const ScalarField& field, const Domain& domain, const SobolevParams& params,
                           const MonteCarloConfig& mc, const RngStream& rng);

struct QuasinormEstimate {
  double lp_part = 0.0;
  double seminorm_part = 0.0;
  double total = 0.0;
  double se_lp = 0.0;
  double se_seminorm = 0.0;
  std::size_t pair_count = 0;
  std::size_t point_count = 0;
};

QuasinormEstimate quasinorm(const ScalarField& field, const Domain& domain, const SobolevParams& params,
                            const MonteCarloConfig& mc, const RngStream& rng);

/// ||f - g||^(p ^ 1) estimated with the Monte Carlo quasinorm.
Estimate quasi_distance(const ScalarField& f, const ScalarField& g, const Domain& domain,
                        const SobolevParams& params, const MonteCarloConfig& mc, const RngStream& rng);

/// Midpoints of n equal cells partitioning an interval domain.
PointSet midpoint_grid(const Domain& interval, std::size_t n);

/**
 * Deterministic quasinorm of a field on an interval from its values at the midpoints of n
 * equal cells. The seminorm sums over off-diagonal cell pairs only; the omitted diagonal
 * cells carry a bias of order h^((lambda - s) p) for a lambda-Hoelder field.
 */
struct GridQuasinorm {
  double lp_part = 0.0;
  double seminorm_part = 0.0;
  double total = 0.0;
};

class GridSeminormKernel {
 public:
  GridSeminormKernel(const Domain& interval, std::size_t n, const SobolevParams& params);

  GridQuasinorm operator()(std::span<const double> values) const;
  std::size_t size() const noexcept { return weights_.size(); }

 private:
  double p_;
  double h_;
  std::vector<double> weights_;  ///< h^2 |x_i - x_j|^-(sp+1) by index offset
};

GridQuasinorm quasinorm_grid_1d(std::span<const double> values, const Domain& interval, const SobolevParams& params);

/// Raw p-th power of the seminorm on the midpoint grid (no p-th root), for oracles and tests.
double seminorm_power_grid_1d(std::span<const double> values, const Domain& interval, const SobolevParams& params);

}  // namespace stablefield

#endif  // STABLEFIELD_SOBOLEV_HPP

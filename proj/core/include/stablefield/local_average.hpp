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

#ifndef STABLEFIELD_LOCAL_AVERAGE_HPP
#define STABLEFIELD_LOCAL_AVERAGE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "stablefield/domain.hpp"
#include "stablefield/field.hpp"
#include "stablefield/rng.hpp"
#include "stablefield/statistics.hpp"

namespace stablefield {

struct QuadratureConfig {
  enum class Kind { Grid, MonteCarlo };

  Kind kind = Kind::Grid;
  /// Grid: midpoints per axis. Monte Carlo: accepted draws.
  std::size_t points = 64;
};

/// Points and weights (summing to 1) approximating the average over B(x, r) intersected with U.
struct QuadratureRule {
  PointSet points;
  std::vector<double> weights;
  /// m(B intersected with U): exact in d = 1 and for balls inside U, estimated otherwise.
  double measure = 0.0;
  bool monte_carlo = false;

  double apply(std::span<const double> values) const noexcept;
};

/// Throws std::invalid_argument when the ball misses the domain or has radius <= 0, and when
/// a Monte Carlo rule is requested without a stream.
QuadratureRule averaging_rule(const Ball& ball, const Domain& domain, const QuadratureConfig& config,
                              RngStream* rng = nullptr);

/// Average of f over B(x, r) intersected with U. Monte Carlo rules report the sample standard
/// error; grid rules report 0.
Estimate local_average(const ScalarField& field, const Ball& ball, const Domain& domain,
                       const QuadratureConfig& config, RngStream* rng = nullptr);

/// Representative points x_j and weights theta_j = m(Q_j intersected with A) / m(A) over the
/// dyadic cubes Q_j of side 2^-n.
struct CubeQuadrature {
  PointSet points;
  std::vector<double> weights;
};

/**
 * Dyadic-cube quadrature for the average over A (a ball intersected with U, or all of U when
 * `subset` is empty). Intersection volumes are exact in d = 1 and use a 1024-point midpoint
 * grid per cube otherwise; the representative point is the centroid of Q_j intersected with A.
 */
CubeQuadrature cube_quadrature_weights(const Domain& domain, const std::optional<Ball>& subset, int level);

}  // namespace stablefield

#endif  // STABLEFIELD_LOCAL_AVERAGE_HPP

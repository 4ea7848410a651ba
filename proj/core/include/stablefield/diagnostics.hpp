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

#ifndef STABLEFIELD_DIAGNOSTICS_HPP
#define STABLEFIELD_DIAGNOSTICS_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stablefield/domain.hpp"
#include "stablefield/field.hpp"
#include "stablefield/local_average.hpp"
#include "stablefield/network.hpp"
#include "stablefield/rng.hpp"
#include "stablefield/sobolev.hpp"
#include "stablefield/statistics.hpp"

namespace stablefield {

/// Draws one random field of the given width from a stream. Studies call it once per
/// replicate with replicate-specific streams.
using FieldSampler = std::function<std::unique_ptr<ScalarField>(std::size_t width, const RngStream& stream)>;

/// Sampler of network fields: `config` with every hidden width set to the requested width.
FieldSampler network_sampler(const NetworkConfig& config);

/// Sampler that ignores the stream and returns x -> value (test hook).
FieldSampler constant_sampler(std::size_t dim, double value);

// ---------------------------------------------------------------------------------------------
// Energy distance

/// 2 E|A - B| - E|A - A'| - E|B - B'| over all pairs (V-statistic). Throws on empty samples or
/// a dimension mismatch.
double energy_distance(const PointSet& a, const PointSet& b);

struct EnergyDistanceTest {
  double statistic = 0.0;
  double bootstrap_se = 0.0;
  /// Mean statistic over random relabelings of the pooled sample: the value expected when
  /// both samples share one distribution.
  double baseline = 0.0;
  double baseline_se = 0.0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
};

/// Energy distance with a bootstrap standard error (independent resampling within each sample)
/// and a permutation baseline.
EnergyDistanceTest energy_distance_test(const PointSet& a, const PointSet& b, std::size_t bootstrap,
                                        std::size_t permutations, const RngStream& rng);

// ---------------------------------------------------------------------------------------------
// Modulus of continuity

struct ModulusConfig {
  NetworkConfig network;
  double p = 0.6;
  Point base_point{0.0};
  /// Unit direction e; defaults to the first coordinate axis.
  std::optional<Point> direction;
  std::vector<double> distances;
  std::size_t reps = 2000;
};

struct ModulusRow {
  double distance = 0.0;
  double mean = 0.0;
  double standard_error = 0.0;
  double median = 0.0;
};

struct ModulusReport {
  std::vector<ModulusRow> rows;
  LinearFit fit;  ///< log mean against log distance
  double p = 0.0;
  std::vector<std::size_t> widths;
  std::size_t reps = 0;
};

/// Eight distances log-spaced in [2^-10, 2^-3].
std::vector<double> default_modulus_distances();

/// E|f(x) - f(x + delta e)|^p for each delta, from `reps` networks shared across all deltas.
/// Throws std::invalid_argument unless 0 < p < alpha and every distance lies in (0, 1].
ModulusReport modulus_estimate(const ModulusConfig& config, const RngStream& rng);

// ---------------------------------------------------------------------------------------------
// Uniform Sobolev energy

struct EnergyScanConfig {
  NetworkConfig network;
  Domain domain = Domain::interval(-1.0, 1.0);
  double s = 0.5;
  double p = 0.8;
  std::vector<std::size_t> widths;
  std::size_t reps = 200;
  /// d = 1: midpoint cells of the deterministic grid quasinorm. Ignored when `mc` is set.
  std::size_t grid_points = 512;
  std::optional<MonteCarloConfig> mc;
};

struct EnergyRow {
  std::size_t width = 0;
  double mean = 0.0;  ///< mean of ||f||^p over replicates
  double standard_error = 0.0;
  double median = 0.0;
};

struct EnergyScanReport {
  std::vector<EnergyRow> rows;
  LinearFit log_fit;  ///< log mean against log width
  LinearFit raw_fit;  ///< mean against log width
  double max_min_ratio = 0.0;
};

/// Replicates share their stream across widths, so narrower networks are sub-networks of the
/// wider ones. Throws std::invalid_argument when the parameters fail validate_params.
EnergyScanReport energy_bound_scan(const EnergyScanConfig& config, const RngStream& rng);

// ---------------------------------------------------------------------------------------------
// Convergence studies

struct ConvergenceRow {
  std::size_t width = 0;
  double statistic = 0.0;
  double standard_error = 0.0;
  double baseline = 0.0;
  double baseline_se = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::size_t reference_width = 0;
  std::size_t reps = 0;
  std::string features;  ///< description of the compared coordinates
};

/// Maps one field to the vector of coordinates compared across widths.
using FeatureMap = std::function<std::vector<double>(const ScalarField&)>;

struct ConvergenceStudyConfig {
  std::vector<std::size_t> widths;
  std::size_t reference_width = 0;
  std::size_t reps = 1000;
  std::size_t bootstrap = 200;
  std::size_t permutations = 200;
};

/**
 * Energy distance between the feature vectors of `reps` fields of each width and `reps`
 * independent fields of the reference width. The width samples share replicate streams with
 * each other but never with the reference sample.
 */
ConvergenceReport convergence_study(const FieldSampler& sampler, const FeatureMap& features,
                                    const ConvergenceStudyConfig& config, const RngStream& rng);

/// Coordinates (f(x_1), ..., f(x_n)).
ConvergenceReport fdd_convergence_study(const FieldSampler& sampler, const PointSet& points,
                                        const ConvergenceStudyConfig& config, const RngStream& rng);

/// Coordinates (f_{B_1}, ..., f_{B_N}) with grid averaging rules.
ConvergenceReport local_avg_convergence_study(const FieldSampler& sampler, const std::vector<Ball>& balls,
                                              const Domain& domain, const QuadratureConfig& quadrature,
                                              const ConvergenceStudyConfig& config, const RngStream& rng);

struct Verdict {
  bool passed = false;
  std::string detail;
};

/// Passes when each statistic exceeds its predecessor by at most `se_multiplier` combined
/// standard errors and the last one is at most `baseline_factor` times its baseline.
Verdict convergence_verdict(const ConvergenceReport& report, double se_multiplier = 2.0,
                            double baseline_factor = 2.0);

// ---------------------------------------------------------------------------------------------
// Lebesgue points

struct LebesgueConfig {
  Domain domain = Domain::interval(-1.0, 1.0);
  Point x{0.3};
  double p = 0.8;
  std::vector<double> radii;
  std::size_t reps = 1000;
  QuadratureConfig quadrature;
};

struct LebesgueRow {
  double radius = 0.0;
  double mean = 0.0;  ///< mean of ((|f - f(x)|)_{B(x, r)})^p
  double standard_error = 0.0;
  double median = 0.0;
};

struct LebesgueReport {
  std::size_t width = 0;
  std::vector<LebesgueRow> rows;
};

LebesgueReport lebesgue_point_study(const FieldSampler& sampler, std::size_t width, const LebesgueConfig& config,
                                    const RngStream& rng);

/// Means non-increasing in decreasing radius up to `se_multiplier` combined standard errors.
Verdict lebesgue_monotone_verdict(const LebesgueReport& report, double se_multiplier = 2.0);

/// Means of two reports agree within `factor` at every radius.
Verdict lebesgue_uniformity_verdict(const LebesgueReport& a, const LebesgueReport& b, double factor = 2.0);

// ---------------------------------------------------------------------------------------------
// Discrete convolution convergence

struct TnStudyConfig {
  Domain domain = Domain::interval(-1.0, 1.0);
  double s = 0.4;
  double p = 0.8;
  std::vector<int> levels{3, 4, 5, 6, 7};
  std::size_t reps = 20;
  std::size_t grid_points = 2048;  ///< midpoint cells for the grid quasinorm
  QuadratureConfig quadrature;
};

struct TnRow {
  int level = 0;
  double median = 0.0;  ///< median of ||T^n f - f||^(p ^ 1)
  double mean = 0.0;
  double lower_quartile = 0.0;
  double upper_quartile = 0.0;
};

struct TnReport {
  std::size_t width = 0;
  std::vector<TnRow> rows;
};

/// ||T^n f - f||^(p ^ 1) on the midpoint grid for one field, one entry per level.
std::vector<double> tn_distances(const ScalarField& field, const TnStudyConfig& config);

TnReport tn_convergence_study(const FieldSampler& sampler, std::size_t width, const TnStudyConfig& config,
                              const RngStream& rng);

/// Medians strictly decreasing in the level.
Verdict tn_verdict(const TnReport& report);

}  // namespace stablefield

#endif  // STABLEFIELD_DIAGNOSTICS_HPP

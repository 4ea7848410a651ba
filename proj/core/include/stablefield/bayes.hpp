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

#ifndef STABLEFIELD_BAYES_HPP
#define STABLEFIELD_BAYES_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "stablefield/diagnostics.hpp"
#include "stablefield/domain.hpp"
#include "stablefield/field.hpp"
#include "stablefield/local_average.hpp"
#include "stablefield/network.hpp"
#include "stablefield/rng.hpp"
#include "stablefield/statistics.hpp"

/**
 * \file
 * \brief Bayesian inversion with stable network priors.
 *
 * Observations u = G(f) + noise with a finite-dimensional forward map G. The posterior is
 * represented by self-normalized importance sampling with the prior as proposal: prior draws
 * f_j with log-weights log rho(u - G(f_j)).
 */

namespace stablefield {

/// A forward map after discretization: a list of linear functionals (quadrature rules over
/// one shared point set) optionally followed by a continuous map.
class CompiledForward {
 public:
  using Map = std::function<std::vector<double>(std::span<const double>)>;

  CompiledForward(PointSet points, std::vector<std::size_t> offsets, std::vector<double> weights, Map map,
                  std::size_t output_dim);

  std::size_t output_dim() const noexcept { return output_dim_; }
  std::size_t linear_dim() const noexcept { return offsets_.size() - 1; }
  const PointSet& points() const noexcept { return points_; }

  /// Linear functionals from field values at points().
  std::vector<double> linear(std::span<const double> values) const;
  /// Full forward image from field values at points().
  std::vector<double> apply_values(std::span<const double> values) const;
  std::vector<double> apply(const ScalarField& field) const;

  /// Concatenation of several compiled maps sharing one evaluation.
  static CompiledForward concat(const std::vector<CompiledForward>& parts);

  /// Same quadrature tables with `outer` applied after this map.
  CompiledForward chain(Map outer, std::size_t output_dim) const;

 private:
  PointSet points_;
  std::vector<std::size_t> offsets_;
  std::vector<double> weights_;
  Map map_;
  std::size_t output_dim_;
};

/// Forward operator G: point evaluations (optionally smoothed over B(x_i, r)), local averages
/// over balls, or a continuous map applied to the outputs of inner operators.
class ForwardOp {
 public:
  enum class Kind { PointEvals, LocalAverages, Composite };

  static ForwardOp point_evals(PointSet points, double smoothing_radius = 0.0);
  static ForwardOp local_averages(std::vector<Ball> balls);
  /// `map` takes the concatenated inner outputs; `holder_exponent` is recorded as metadata.
  static ForwardOp composite(std::vector<ForwardOp> inner, CompiledForward::Map map, std::size_t output_dim,
                             double holder_exponent, std::string description = {});

  Kind kind() const noexcept { return kind_; }
  std::size_t output_dim() const noexcept { return output_dim_; }
  double holder_exponent() const noexcept { return holder_exponent_; }
  double smoothing_radius() const noexcept { return radius_; }
  std::string describe() const;

  /// Discretize against a domain: every local average becomes a quadrature rule.
  CompiledForward compile(const Domain& domain, const QuadratureConfig& quadrature) const;

 private:
  ForwardOp() = default;

  Kind kind_ = Kind::PointEvals;
  PointSet points_;
  double radius_ = 0.0;
  std::vector<Ball> balls_;
  std::vector<ForwardOp> inner_;
  CompiledForward::Map map_;
  std::size_t output_dim_ = 0;
  double holder_exponent_ = 1.0;
  std::string description_;
};

class NoiseModel {
 public:
  enum class Kind { Gaussian, Cauchy };

  static NoiseModel gaussian(double scale, std::size_t dim);
  static NoiseModel cauchy(double scale, std::size_t dim);

  Kind kind() const noexcept { return kind_; }
  double scale() const noexcept { return scale_; }
  std::size_t dimension() const noexcept { return dim_; }
  /// Hoelder exponent of the density (both densities are Lipschitz).
  double holder_exponent() const noexcept { return 1.0; }
  std::string name() const;

  /// log rho_M(residual).
  double log_density(std::span<const double> residual) const;

 private:
  NoiseModel(Kind kind, double scale, std::size_t dim);

  Kind kind_;
  double scale_;
  std::size_t dim_;
};

/// log rho_M(u - g). Throws std::invalid_argument on a dimension mismatch.
double log_likelihood(const NoiseModel& noise, std::span<const double> u, std::span<const double> g);

/// Prior draws with their forward images, cached functional values and log-weights.
struct PosteriorEnsemble {
  std::vector<std::vector<double>> forward_images;
  std::vector<std::vector<double>> functional_values;
  std::vector<double> log_weights;
  /// log of the mean unnormalized weight, i.e. the log evidence estimate.
  double log_normalizer = 0.0;
  double ess = 0.0;

  std::size_t size() const noexcept { return log_weights.size(); }
  /// Weights normalized to sum to 1, computed with the maximum log-weight subtracted.
  std::vector<double> normalized_weights() const;
};

struct PosteriorProblem {
  NetworkConfig network;
  Domain domain = Domain::interval(-1.0, 1.0);
  ForwardOp forward = ForwardOp::point_evals(PointSet{1, {0.0}});
  NoiseModel noise = NoiseModel::gaussian(1.0, 1);
  std::vector<double> observation;
  /// Functionals whose posterior means are wanted; empty means the forward map itself.
  std::vector<ForwardOp> functionals;
  QuadratureConfig quadrature;
};

/// Fills log-weights, the log normalizer and the ESS from the log-weights already stored.
void finalize_ensemble(PosteriorEnsemble& ensemble);

/**
 * n_draws prior networks with every hidden width set to `width`, weighted by the likelihood.
 * Draw j uses rng.substream(j). Throws std::runtime_error on a non-finite forward image.
 */
PosteriorEnsemble posterior_importance(const PosteriorProblem& problem, std::size_t width, std::size_t n_draws,
                                       const RngStream& rng);

/// Same with an arbitrary field sampler (test hook).
PosteriorEnsemble posterior_importance(const PosteriorProblem& problem, const FieldSampler& sampler,
                                       std::size_t width, std::size_t n_draws, const RngStream& rng);

/// Self-normalized estimate sum w_j F_j / sum w_j with delta-method standard error.
Estimate posterior_expectation(const PosteriorEnsemble& ensemble, std::span<const double> values);
/// Posterior mean of cached functional `index`.
Estimate posterior_expectation(const PosteriorEnsemble& ensemble, std::size_t index);
/// Prior (unweighted) mean of cached functional `index`.
Estimate prior_expectation(const PosteriorEnsemble& ensemble, std::size_t index);

struct OracleResult {
  std::vector<double> means;              ///< posterior means of each functional
  std::vector<double> quadrature_errors;  ///< difference from the half-resolution grid
  double log_evidence = 0.0;
};

/**
 * Deterministic quadrature of the posterior for a width-1 shallow network on an interval with
 * zero output-bias scale: f(x) = v phi(u x + a). The integrals over (u, a, v) use midpoint
 * grids in t with x = sigma tan t, weighting by the stable density; the forward map is linear
 * in v. Functionals must be linear (no composite map). Throws std::invalid_argument when the
 * problem is outside that scope.
 */
OracleResult tiny_grid_oracle(const PosteriorProblem& problem, std::size_t nodes = 192);

struct PosteriorConvergenceRow {
  std::size_t width = 0;
  std::vector<double> means;
  std::vector<double> standard_errors;
  double ess = 0.0;
  double discrepancy = 0.0;  ///< sum_k |mean_k - reference_k|
  double discrepancy_se = 0.0;
};

struct PosteriorConvergenceReport {
  std::vector<PosteriorConvergenceRow> rows;
  PosteriorConvergenceRow reference;
};

/// Widths share replicate streams; the reference ensemble uses an independent stream.
PosteriorConvergenceReport posterior_convergence_study(const PosteriorProblem& problem,
                                                       const std::vector<std::size_t>& widths,
                                                       std::size_t reference_width, std::size_t n_draws,
                                                       const RngStream& rng);

/// Discrepancies non-increasing up to `se_multiplier` combined errors, and every functional
/// of the widest network within `final_multiplier` pooled standard errors of the reference.
Verdict posterior_convergence_verdict(const PosteriorConvergenceReport& report, double se_multiplier = 2.0,
                                      double final_multiplier = 3.0);

}  // namespace stablefield

#endif  // STABLEFIELD_BAYES_HPP

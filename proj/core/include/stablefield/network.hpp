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

#ifndef STABLEFIELD_NETWORK_HPP
#define STABLEFIELD_NETWORK_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stablefield/activation.hpp"
#include "stablefield/field.hpp"
#include "stablefield/rng.hpp"

/**
 * \file
 * \brief Shallow and deep alpha-stable random networks.
 *
 * The deep recursion is
 *
 *   f1(x)     = U x + a1,
 *   f(l+1)(x) = H_l^(-1/alpha) V_l phi(f_l(x)) + a(l+1),     l = 1..L,
 *
 * with scalar output f(L+1). The shallow network H^(-1/alpha) sum_i v_i phi(u_i x + a_i) + b
 * is the case L = 1 with output bias b = a(2).
 */

namespace stablefield {

/// Scales of the four weight groups: output weights v, output bias b, input weights u and
/// hidden biases a. Hidden weight matrices of deep networks use sigma_v.
struct NetworkScales {
  double sigma_v = 1.0;
  double sigma_b = 0.0;
  double sigma_u = 5.0;
  double sigma_a = 2.0;

  bool operator==(const NetworkScales&) const = default;
};

struct NetworkConfig {
  double alpha = 1.5;
  std::size_t input_dim = 1;
  std::vector<std::size_t> widths{1};
  NetworkScales scales;
  ActivationSpec activation = ActivationSpec::clipped_linear();

  /// Throws std::invalid_argument unless alpha in (0, 2), d >= 1, every width >= 1,
  /// sigma_v, sigma_u > 0 and sigma_b, sigma_a >= 0.
  void validate() const;

  std::size_t depth() const noexcept { return widths.size(); }
  bool shallow() const noexcept { return widths.size() == 1; }

  /// Copy with every hidden width replaced by `width`.
  NetworkConfig with_width(std::size_t width) const;
  NetworkConfig with_widths(std::vector<std::size_t> new_widths) const;
};

/// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows{r}, cols{c}, data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) noexcept { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data[i * cols + j]; }
  std::span<const double> row(std::size_t i) const noexcept { return {data.data() + i * cols, cols}; }
};

/**
 * One draw of all weights and biases.
 *
 * input_weights is H1 x d. hidden_weights[l] maps layer l+1 to layer l+2 and is
 * H(l+2) x H(l+1), the last one having a single row. biases[l] has H(l+1) entries for
 * l < L and biases[L] holds the scalar output bias.
 */
class NetworkRealization {
 public:
  /// Assemble a realization from explicit parameters; throws on inconsistent dimensions.
  NetworkRealization(NetworkConfig config, Matrix input_weights, std::vector<Matrix> hidden_weights,
                     std::vector<std::vector<double>> biases);

  const NetworkConfig& config() const noexcept { return config_; }
  const Matrix& input_weights() const noexcept { return input_weights_; }
  const std::vector<Matrix>& hidden_weights() const noexcept { return hidden_weights_; }
  const std::vector<std::vector<double>>& biases() const noexcept { return biases_; }
  double output_bias() const noexcept { return biases_.back()[0]; }

  double evaluate(std::span<const double> x) const;

  /// values[i] = evaluate(points[i]); parallel over points.
  std::vector<double> evaluate_points(const PointSet& points) const;

 private:
  void evaluate_shallow_block(const PointSet& points, std::size_t begin, std::size_t end,
                              std::span<double> out) const;
  double evaluate_deep(std::span<const double> x, std::vector<double>& current,
                       std::vector<double>& next) const;

  NetworkConfig config_;
  Matrix input_weights_;
  std::vector<Matrix> hidden_weights_;
  std::vector<std::vector<double>> biases_;
  std::vector<double> layer_scale_;
};

/**
 * Draw every weight and bias iid from its group's SaS law (zero scale gives exact zeros).
 *
 * Each neuron draws its bias and incoming weights from its own substream of `rng`, bias
 * first. Consequently the parameters of neuron j do not depend on the layer widths, and a
 * shallow network of width H reuses the first H neurons of any wider network drawn from
 * the same stream (common random numbers across widths).
 */
NetworkRealization sample_network(const NetworkConfig& config, const RngStream& rng);

double evaluate(const NetworkRealization& realization, std::span<const double> x);

FieldSample evaluate_grid(const NetworkRealization& realization, const PointSet& grid);

/// ScalarField view of a realization.
class NetworkField final : public ScalarField {
 public:
  explicit NetworkField(NetworkRealization realization) : realization_{std::move(realization)} {}

  std::size_t dimension() const noexcept override { return realization_.config().input_dim; }
  double operator()(std::span<const double> x) const override { return realization_.evaluate(x); }
  void evaluate(const PointSet& points, std::span<double> out) const override;

  const NetworkRealization& realization() const noexcept { return realization_; }

 private:
  NetworkRealization realization_;
};

}  // namespace stablefield

#endif  // STABLEFIELD_NETWORK_HPP

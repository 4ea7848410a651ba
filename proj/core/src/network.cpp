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

#include "stablefield/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "stablefield/parallel.hpp"
#include "stablefield/stable.hpp"

namespace stablefield {

namespace {

constexpr std::size_t kPointBlock = 64;

std::uint64_t neuron_group(std::size_t layer, std::size_t neuron) noexcept {
  return (static_cast<std::uint64_t>(layer) << 40) ^ static_cast<std::uint64_t>(neuron);
}

double draw(double alpha, double sigma, RngStream& rng) {
  if (sigma == 0.0) {
    return 0.0;
  }
  return sample_sas(StableParams{alpha, sigma}, rng);
}

}  // namespace

void NetworkConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("network alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
  if (input_dim == 0) {
    throw std::invalid_argument("network input dimension must be >= 1");
  }
  if (widths.empty()) {
    throw std::invalid_argument("network needs at least one hidden layer");
  }
  for (const std::size_t w : widths) {
    if (w == 0) {
      throw std::invalid_argument("network widths must be >= 1");
    }
  }
  if (!(scales.sigma_v > 0.0) || !(scales.sigma_u > 0.0)) {
    throw std::invalid_argument("weight scales sigma_v and sigma_u must be positive");
  }
  if (!(scales.sigma_b >= 0.0) || !(scales.sigma_a >= 0.0) || !std::isfinite(scales.sigma_b) ||
      !std::isfinite(scales.sigma_a) || !std::isfinite(scales.sigma_v) || !std::isfinite(scales.sigma_u)) {
    throw std::invalid_argument("bias scales sigma_b and sigma_a must be finite and >= 0");
  }
}

NetworkConfig NetworkConfig::with_width(std::size_t width) const {
  NetworkConfig copy = *this;
  for (std::size_t& w : copy.widths) {
    w = width;
  }
  return copy;
}

NetworkConfig NetworkConfig::with_widths(std::vector<std::size_t> new_widths) const {
  NetworkConfig copy = *this;
  copy.widths = std::move(new_widths);
  return copy;
}

NetworkRealization::NetworkRealization(NetworkConfig config, Matrix input_weights,
                                       std::vector<Matrix> hidden_weights,
                                       std::vector<std::vector<double>> biases)
    : config_{std::move(config)},
      input_weights_{std::move(input_weights)},
      hidden_weights_{std::move(hidden_weights)},
      biases_{std::move(biases)} {
  const auto& widths = config_.widths;
  const std::size_t depth = widths.size();
  if (depth == 0 || input_weights_.rows != widths[0] || input_weights_.cols != config_.input_dim ||
      input_weights_.data.size() != widths[0] * config_.input_dim) {
    throw std::invalid_argument("input weight matrix must be H1 x d");
  }
  if (hidden_weights_.size() != depth || biases_.size() != depth + 1) {
    throw std::invalid_argument("network needs L weight matrices and L+1 bias vectors");
  }
  for (std::size_t l = 0; l < depth; ++l) {
    const std::size_t out = (l + 1 < depth) ? widths[l + 1] : 1;
    const Matrix& m = hidden_weights_[l];
    if (m.rows != out || m.cols != widths[l] || m.data.size() != out * widths[l]) {
      throw std::invalid_argument("weight matrix " + std::to_string(l + 1) + " has inconsistent dimensions");
    }
    if (biases_[l].size() != widths[l]) {
      throw std::invalid_argument("bias vector " + std::to_string(l + 1) + " has inconsistent length");
    }
  }
  if (biases_[depth].size() != 1) {
    throw std::invalid_argument("output bias must be a scalar");
  }
  layer_scale_.resize(depth);
  for (std::size_t l = 0; l < depth; ++l) {
    layer_scale_[l] = std::pow(static_cast<double>(widths[l]), -1.0 / config_.alpha);
  }
}

double NetworkRealization::evaluate_deep(std::span<const double> x, std::vector<double>& current,
                                         std::vector<double>& next) const {
  const std::size_t depth = config_.widths.size();
  const std::size_t d = config_.input_dim;
  current.resize(config_.widths[0]);
  for (std::size_t j = 0; j < current.size(); ++j) {
    double pre = biases_[0][j];
    for (std::size_t k = 0; k < d; ++k) {
      pre += input_weights_(j, k) * x[k];
    }
    current[j] = pre;
  }
  return visit_activation(config_.activation, [&](auto phi) {
    for (std::size_t l = 0; l < depth; ++l) {
      for (double& h : current) {
        h = phi(h);
      }
      const Matrix& w = hidden_weights_[l];
      const std::vector<double>& bias = biases_[l + 1];
      next.resize(w.rows);
      for (std::size_t j = 0; j < w.rows; ++j) {
        const std::span<const double> row = w.row(j);
        double sum = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
          sum += row[k] * current[k];
        }
        next[j] = layer_scale_[l] * sum + bias[j];
      }
      current.swap(next);
    }
    return current[0];
  });
}

void NetworkRealization::evaluate_shallow_block(const PointSet& points, std::size_t begin, std::size_t end,
                                                std::span<double> out) const {
  const std::size_t count = end - begin;
  const std::size_t d = config_.input_dim;
  const std::size_t width = config_.widths[0];
  const std::span<const double> v = hidden_weights_[0].row(0);
  const std::vector<double>& a = biases_[0];
  double sums[kPointBlock] = {};
  double pre[kPointBlock];
  visit_activation(config_.activation, [&](auto phi) {
    for (std::size_t i = 0; i < width; ++i) {
      const std::span<const double> u = input_weights_.row(i);
      if (d == 1) {
        for (std::size_t p = 0; p < count; ++p) {
          pre[p] = u[0] * points[begin + p][0] + a[i];
        }
      } else {
        for (std::size_t p = 0; p < count; ++p) {
          const std::span<const double> x = points[begin + p];
          double acc = a[i];
          for (std::size_t k = 0; k < d; ++k) {
            acc += u[k] * x[k];
          }
          pre[p] = acc;
        }
      }
      const double vi = v[i];
      for (std::size_t p = 0; p < count; ++p) {
        sums[p] += vi * phi(pre[p]);
      }
    }
    return 0;
  });
  const double b = output_bias();
  for (std::size_t p = 0; p < count; ++p) {
    out[begin + p] = layer_scale_[0] * sums[p] + b;
  }
}

double NetworkRealization::evaluate(std::span<const double> x) const {
  if (x.size() != config_.input_dim) {
    throw std::invalid_argument("evaluation point has dimension " + std::to_string(x.size()) +
                                ", network expects " + std::to_string(config_.input_dim));
  }
  std::vector<double> current;
  std::vector<double> next;
  return evaluate_deep(x, current, next);
}

std::vector<double> NetworkRealization::evaluate_points(const PointSet& points) const {
  if (!points.empty() && points.dim() != config_.input_dim) {
    throw std::invalid_argument("grid dimension " + std::to_string(points.dim()) + " does not match network input " +
                                std::to_string(config_.input_dim));
  }
  std::vector<double> out(points.size());
  const std::size_t blocks = (points.size() + kPointBlock - 1) / kPointBlock;
  parallel_for(blocks, [&](std::size_t block) {
    const std::size_t begin = block * kPointBlock;
    const std::size_t end = std::min(points.size(), begin + kPointBlock);
    if (config_.shallow()) {
      evaluate_shallow_block(points, begin, end, out);
    } else {
      std::vector<double> current;
      std::vector<double> next;
      for (std::size_t p = begin; p < end; ++p) {
        out[p] = evaluate_deep(points[p], current, next);
      }
    }
  });
  return out;
}

NetworkRealization sample_network(const NetworkConfig& config, const RngStream& rng) {
  config.validate();
  const double alpha = config.alpha;
  const NetworkScales& s = config.scales;
  const auto& widths = config.widths;
  const std::size_t depth = widths.size();
  const std::size_t d = config.input_dim;

  Matrix input(widths[0], d);
  std::vector<std::vector<double>> biases(depth + 1);
  biases[0].resize(widths[0]);
  for (std::size_t j = 0; j < widths[0]; ++j) {
    RngStream stream = rng.substream(neuron_group(0, j));
    biases[0][j] = draw(alpha, s.sigma_a, stream);
    for (std::size_t k = 0; k < d; ++k) {
      input(j, k) = draw(alpha, s.sigma_u, stream);
    }
  }

  std::vector<Matrix> hidden;
  hidden.reserve(depth);
  for (std::size_t l = 0; l < depth; ++l) {
    const bool output_layer = l + 1 == depth;
    const std::size_t rows = output_layer ? 1 : widths[l + 1];
    const double bias_scale = output_layer ? s.sigma_b : s.sigma_a;
    Matrix w(rows, widths[l]);
    biases[l + 1].resize(rows);
    for (std::size_t j = 0; j < rows; ++j) {
      RngStream stream = rng.substream(neuron_group(l + 1, j));
      biases[l + 1][j] = draw(alpha, bias_scale, stream);
      for (std::size_t k = 0; k < widths[l]; ++k) {
        w(j, k) = draw(alpha, s.sigma_v, stream);
      }
    }
    hidden.push_back(std::move(w));
  }
  return NetworkRealization{config, std::move(input), std::move(hidden), std::move(biases)};
}

double evaluate(const NetworkRealization& realization, std::span<const double> x) {
  return realization.evaluate(x);
}

FieldSample evaluate_grid(const NetworkRealization& realization, const PointSet& grid) {
  FieldSample sample;
  sample.values = realization.evaluate_points(grid);
  sample.grid = grid;
  return sample;
}

void NetworkField::evaluate(const PointSet& points, std::span<double> out) const {
  const std::vector<double> values = realization_.evaluate_points(points);
  std::copy(values.begin(), values.end(), out.begin());
}

}  // namespace stablefield

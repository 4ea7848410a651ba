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

#include "stablefield/field.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stablefield {

void ScalarField::evaluate(const PointSet& points, std::span<double> out) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = (*this)(points[i]);
  }
}

std::vector<double> ScalarField::evaluate(const PointSet& points) const {
  if (!points.empty() && points.dim() != dimension()) {
    throw std::invalid_argument("point dimension does not match field dimension");
  }
  std::vector<double> out(points.size());
  evaluate(points, out);
  return out;
}

NearestNeighborField::NearestNeighborField(FieldSample sample) : sample_{std::move(sample)} {
  if (sample_.grid.size() != sample_.values.size() || sample_.values.empty()) {
    throw std::invalid_argument("nearest-neighbour field needs a non-empty grid with one value per point");
  }
  if (sample_.grid.dim() == 1) {
    std::vector<std::size_t> order(sample_.values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return sample_.grid[i][0] < sample_.grid[j][0]; });
    for (const std::size_t i : order) {
      sorted_x_.push_back(sample_.grid[i][0]);
      sorted_values_.push_back(sample_.values[i]);
    }
  }
}

double NearestNeighborField::operator()(std::span<const double> x) const {
  if (!sorted_x_.empty()) {
    const auto it = std::lower_bound(sorted_x_.begin(), sorted_x_.end(), x[0]);
    if (it == sorted_x_.begin()) {
      return sorted_values_.front();
    }
    if (it == sorted_x_.end()) {
      return sorted_values_.back();
    }
    const auto hi = static_cast<std::size_t>(it - sorted_x_.begin());
    return (x[0] - sorted_x_[hi - 1] <= sorted_x_[hi] - x[0]) ? sorted_values_[hi - 1] : sorted_values_[hi];
  }
  std::size_t best = 0;
  double best_distance = distance(sample_.grid[0], x);
  for (std::size_t i = 1; i < sample_.values.size(); ++i) {
    const double dist = distance(sample_.grid[i], x);
    if (dist < best_distance) {
      best_distance = dist;
      best = i;
    }
  }
  return sample_.values[best];
}

LinearCombinationField::LinearCombinationField(double a, std::shared_ptr<const ScalarField> f, double b,
                                               std::shared_ptr<const ScalarField> g)
    : a_{a}, f_{std::move(f)}, b_{b}, g_{std::move(g)} {
  if (!f_ || !g_ || f_->dimension() != g_->dimension()) {
    throw std::invalid_argument("linear combination needs two fields of equal dimension");
  }
}

double LinearCombinationField::operator()(std::span<const double> x) const {
  return a_ * (*f_)(x) + b_ * (*g_)(x);
}

void LinearCombinationField::evaluate(const PointSet& points, std::span<double> out) const {
  std::vector<double> other(points.size());
  f_->evaluate(points, out);
  g_->evaluate(points, other);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a_ * out[i] + b_ * other[i];
  }
}

}  // namespace stablefield

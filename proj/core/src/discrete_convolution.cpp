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

#include "stablefield/discrete_convolution.hpp"

#include <cmath>
#include <stdexcept>


namespace stablefield {

namespace {

constexpr long long kCellOffset = 1LL << 20;
constexpr long long kCellBase = 1LL << 21;

long long pack(std::span<const long long> cell) noexcept {
  long long key = 0;
  for (const long long c : cell) {
    key = key * kCellBase + (c + kCellOffset);
  }
  return key;
}

// Visits every cell in the 3^d neighbourhood of `cell`.
template <class Visit>
void for_each_neighbor(std::span<const long long> cell, Visit&& visit) {
  const std::size_t d = cell.size();
  std::vector<long long> shift(d, -1);
  std::vector<long long> current(d);
  for (;;) {
    for (std::size_t k = 0; k < d; ++k) {
      current[k] = cell[k] + shift[k];
    }
    visit(pack(current));
    std::size_t k = 0;
    while (k < d && ++shift[k] == 2) {
      shift[k] = -1;
      ++k;
    }
    if (k == d) {
      return;
    }
  }
}

std::vector<long long> cell_index(std::span<const double> x, double size) {
  std::vector<long long> cell(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    cell[k] = static_cast<long long>(std::floor(x[k] / size));
  }
  return cell;
}

}  // namespace

PointSet separated_centers(const Domain& domain, int level) {
  if (level < 0) {
    throw std::invalid_argument("cover level must be >= 0");
  }
  const double sep = std::ldexp(1.0, -level - 1);
  const std::size_t d = domain.dimension();
  PointSet centers{d};

  if (d == 1) {
    const double a = domain.lower();
    const double b = domain.upper();
    for (std::size_t k = 0;; ++k) {
      const double c = a + (static_cast<double>(k) + 0.5) * sep;
      if (c >= b) {
        break;
      }
      centers.push_back(std::span<const double>{&c, 1});
    }
    if (centers.empty()) {
      const double c = 0.5 * (a + b);
      centers.push_back(std::span<const double>{&c, 1});
    }
    return centers;
  }

  const double spacing = sep / 4.0;
  const auto per_axis = static_cast<std::size_t>(std::ceil(domain.diameter() / spacing));
  std::unordered_map<long long, std::vector<std::size_t>> buckets;
  std::vector<std::size_t> index(d, 0);
  std::vector<double> x(d);
  for (;;) {
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = domain.center()[k] - domain.radius() + (static_cast<double>(index[k]) + 0.5) * spacing;
    }
    if (domain.contains(x)) {
      const std::vector<long long> cell = cell_index(x, sep);
      bool free = true;
      for_each_neighbor(cell, [&](long long key) {
        if (!free) {
          return;
        }
        const auto it = buckets.find(key);
        if (it == buckets.end()) {
          return;
        }
        for (const std::size_t j : it->second) {
          if (distance(centers[j], x) < sep) {
            free = false;
            return;
          }
        }
      });
      if (free) {
        buckets[pack(cell)].push_back(centers.size());
        centers.push_back(x);
      }
    }
    std::size_t k = 0;
    while (k < d && ++index[k] == per_axis) {
      index[k] = 0;
      ++k;
    }
    if (k == d) {
      break;
    }
  }
  return centers;
}

PartitionOfUnity::PartitionOfUnity(PointSet centers, int level)
    : centers_{std::move(centers)}, level_{level}, radius_{std::ldexp(1.0, -level)} {
  if (centers_.empty()) {
    throw std::invalid_argument("partition of unity needs at least one centre");
  }
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    buckets_[cell_key(cell_of(centers_[i]))].push_back(i);
  }
}

std::vector<long long> PartitionOfUnity::cell_of(std::span<const double> x) const {
  return cell_index(x, radius_);
}

long long PartitionOfUnity::cell_key(std::span<const long long> cell) const noexcept { return pack(cell); }

void PartitionOfUnity::weights(std::span<const double> x, std::vector<std::size_t>& index,
                               std::vector<double>& value) const {
  index.clear();
  value.clear();
  const double scale = 1.0 / radius_;
  double total = 0.0;
  for_each_neighbor(cell_of(x), [&](long long key) {
    const auto it = buckets_.find(key);
    if (it == buckets_.end()) {
      return;
    }
    for (const std::size_t j : it->second) {
      const double h = 1.0 - scale * distance(centers_[j], x);
      if (h > 0.0) {
        index.push_back(j);
        value.push_back(h);
        total += h;
      }
    }
  });
  for (double& v : value) {
    v /= total;
  }
}

double PartitionOfUnity::total(std::span<const double> x) const {
  std::vector<std::size_t> index;
  std::vector<double> value;
  weights(x, index, value);
  double sum = 0.0;
  for (const double v : value) {
    sum += v;
  }
  return sum;
}

TnField::TnField(std::shared_ptr<const PartitionOfUnity> partition, std::vector<double> coefficients)
    : partition_{std::move(partition)}, coefficients_{std::move(coefficients)} {
  if (!partition_ || coefficients_.size() != partition_->size()) {
    throw std::invalid_argument("one coefficient per partition function is required");
  }
}

double TnField::operator()(std::span<const double> x) const {
  thread_local std::vector<std::size_t> index;
  thread_local std::vector<double> value;
  partition_->weights(x, index, value);
  double sum = 0.0;
  for (std::size_t k = 0; k < index.size(); ++k) {
    sum += coefficients_[index[k]] * value[k];
  }
  return sum;
}

TnOperator::TnOperator(const Domain& domain, int level, const QuadratureConfig& quadrature) {
  if (quadrature.kind != QuadratureConfig::Kind::Grid) {
    throw std::invalid_argument("the discrete convolution operator uses grid averaging rules");
  }
  PointSet centers = separated_centers(domain, level);
  const double radius = std::ldexp(1.0, -level);
  all_points_ = PointSet{domain.dimension()};
  offsets_.push_back(0);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const std::span<const double> c = centers[i];
    const Ball ball{Point(c.begin(), c.end()), radius};
    const QuadratureRule rule = averaging_rule(ball, domain, quadrature);
    for (std::size_t j = 0; j < rule.points.size(); ++j) {
      all_points_.push_back(rule.points[j]);
      weights_.push_back(rule.weights[j]);
    }
    offsets_.push_back(all_points_.size());
  }
  partition_ = std::make_shared<const PartitionOfUnity>(std::move(centers), level);
}

std::vector<double> TnOperator::averages(const ScalarField& field) const {
  const std::vector<double> values = field.evaluate(all_points_);
  std::vector<double> out(offsets_.size() - 1, 0.0);
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = offsets_[i]; j < offsets_[i + 1]; ++j) {
      sum += weights_[j] * values[j];
    }
    out[i] = sum;
  }
  return out;
}

TnField TnOperator::apply(const ScalarField& field) const { return TnField{partition_, averages(field)}; }

TnField tn_operator(const ScalarField& field, const Domain& domain, int level, const QuadratureConfig& quadrature) {
  return TnOperator{domain, level, quadrature}.apply(field);
}

}  // namespace stablefield

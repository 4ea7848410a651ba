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

#ifndef STABLEFIELD_DISCRETE_CONVOLUTION_HPP
#define STABLEFIELD_DISCRETE_CONVOLUTION_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "stablefield/domain.hpp"
#include "stablefield/field.hpp"
#include "stablefield/local_average.hpp"

namespace stablefield {

/**
 * Maximal 2^(-n-1)-separated subset of the domain.
 *
 * In d = 1 the centres are the midpoints of consecutive cells of length 2^(-n-1) starting at
 * the left endpoint, which is exactly maximal. In d >= 2 a greedy pass runs over a candidate
 * grid of spacing 2^(-n-3); every candidate then lies within 2^(-n-1) of a centre.
 */
PointSet separated_centers(const Domain& domain, int level);

/**
 * Partition of unity psi_i = h_i / sum_j h_j with h_i(x) = max(0, 1 - 2^n |x - x_i|), subordinate
 * to the balls B(x_i, 2^-n).
 */
class PartitionOfUnity {
 public:
  PartitionOfUnity(PointSet centers, int level);

  std::size_t size() const noexcept { return centers_.size(); }
  int level() const noexcept { return level_; }
  const PointSet& centers() const noexcept { return centers_; }
  double radius() const noexcept { return radius_; }

  /// Indices and values psi_i(x) of the non-zero functions at x. Empty when x is farther than
  /// 2^-n from every centre.
  void weights(std::span<const double> x, std::vector<std::size_t>& index, std::vector<double>& value) const;

  /// sum_i psi_i(x): 1 wherever some h_i(x) > 0.
  double total(std::span<const double> x) const;

 private:
  std::vector<long long> cell_of(std::span<const double> x) const;
  long long cell_key(std::span<const long long> cell) const noexcept;

  PointSet centers_;
  int level_;
  double radius_;
  std::unordered_map<long long, std::vector<std::size_t>> buckets_;
};

/// x -> sum_i c_i psi_i(x).
class TnField final : public ScalarField {
 public:
  TnField(std::shared_ptr<const PartitionOfUnity> partition, std::vector<double> coefficients);

  std::size_t dimension() const noexcept override { return partition_->centers().dim(); }
  double operator()(std::span<const double> x) const override;

  const std::vector<double>& coefficients() const noexcept { return coefficients_; }

 private:
  std::shared_ptr<const PartitionOfUnity> partition_;
  std::vector<double> coefficients_;
};

/// Everything needed to apply T^n to many fields: the cover, its partition of unity and one
/// averaging rule per ball.
class TnOperator {
 public:
  TnOperator(const Domain& domain, int level, const QuadratureConfig& quadrature);

  const PartitionOfUnity& partition() const noexcept { return *partition_; }
  int level() const noexcept { return partition_->level(); }

  /// Local averages f_{B_i} for every ball of the cover.
  std::vector<double> averages(const ScalarField& field) const;

  /// T^n f as a field.
  TnField apply(const ScalarField& field) const;

 private:
  std::shared_ptr<const PartitionOfUnity> partition_;
  PointSet all_points_;
  std::vector<std::size_t> offsets_;
  std::vector<double> weights_;
};

/// T^n f = sum_i f_{B_i} psi_i with the averages computed by `quadrature`.
TnField tn_operator(const ScalarField& field, const Domain& domain, int level, const QuadratureConfig& quadrature);

}  // namespace stablefield

#endif  // STABLEFIELD_DISCRETE_CONVOLUTION_HPP

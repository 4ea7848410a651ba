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

#ifndef STABLEFIELD_FIELD_HPP
#define STABLEFIELD_FIELD_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "stablefield/domain.hpp"

namespace stablefield {

/// Real-valued function on R^d, evaluated pointwise or in batches.
class ScalarField {
 public:
  virtual ~ScalarField() = default;

  virtual std::size_t dimension() const noexcept = 0;
  virtual double operator()(std::span<const double> x) const = 0;

  /// out[i] = f(points[i]). The default loops over operator().
  virtual void evaluate(const PointSet& points, std::span<double> out) const;

  std::vector<double> evaluate(const PointSet& points) const;
};

/// Adapts a callable.
class FunctionField final : public ScalarField {
 public:
  using Function = std::function<double(std::span<const double>)>;

  FunctionField(std::size_t dim, Function fn) : dim_{dim}, fn_{std::move(fn)} {}

  std::size_t dimension() const noexcept override { return dim_; }
  double operator()(std::span<const double> x) const override { return fn_(x); }

 private:
  std::size_t dim_;
  Function fn_;
};

/// Field known through its values on a finite grid.
struct FieldSample {
  PointSet grid;
  std::vector<double> values;
  std::optional<Domain> domain;

  std::size_t size() const noexcept { return values.size(); }
};

/**
 * Nearest-neighbour extension of gridded values to all of R^d.
 *
 * One-dimensional grids are searched by bisection after sorting; higher dimensions fall back
 * to a linear scan.
 */
class NearestNeighborField final : public ScalarField {
 public:
  explicit NearestNeighborField(FieldSample sample);

  std::size_t dimension() const noexcept override { return sample_.grid.dim(); }
  double operator()(std::span<const double> x) const override;

 private:
  FieldSample sample_;
  std::vector<double> sorted_x_;
  std::vector<double> sorted_values_;
};

/// x -> a f(x) + b g(x).
class LinearCombinationField final : public ScalarField {
 public:
  LinearCombinationField(double a, std::shared_ptr<const ScalarField> f, double b,
                         std::shared_ptr<const ScalarField> g);

  std::size_t dimension() const noexcept override { return f_->dimension(); }
  double operator()(std::span<const double> x) const override;
  void evaluate(const PointSet& points, std::span<double> out) const override;

 private:
  double a_;
  std::shared_ptr<const ScalarField> f_;
  double b_;
  std::shared_ptr<const ScalarField> g_;
};

}  // namespace stablefield

#endif  // STABLEFIELD_FIELD_HPP

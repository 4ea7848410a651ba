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

#ifndef STABLEFIELD_DOMAIN_HPP
#define STABLEFIELD_DOMAIN_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "stablefield/rng.hpp"

namespace stablefield {

using Point = std::vector<double>;

/// Points of a fixed dimension stored contiguously (row-major).
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim) : dim_{dim} {}
  PointSet(std::size_t dim, std::vector<double> coords);

  /// One-dimensional points.
  static PointSet from_values(std::span<const double> xs);
  static PointSet from_values(std::initializer_list<double> xs) { return from_values(std::span<const double>{xs.begin(), xs.size()}); }
  /// Evenly spaced points lo..hi inclusive, n >= 2 (n = 1 gives the midpoint).
  static PointSet linspace(double lo, double hi, std::size_t n);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> operator[](std::size_t i) noexcept { return {coords_.data() + i * dim_, dim_}; }

  void push_back(std::span<const double> point);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }
  const std::vector<double>& coords() const noexcept { return coords_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

double distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Euclidean ball B(center, radius); used restricted to a domain.
struct Ball {
  Point center;
  double radius = 0.0;

  bool contains(std::span<const double> x) const noexcept { return distance(x, center) < radius; }
};

/// Volume of the unit ball in R^d.
double unit_ball_volume(std::size_t d);
/// Surface area of the unit sphere in R^d.
double unit_sphere_area(std::size_t d);

/**
 * Bounded domain with smooth boundary: an open interval (d = 1) or an open ball (d >= 2).
 *
 * Boxes are deliberately unavailable in d >= 2: the regularity theory used throughout
 * needs a C-infinity boundary.
 */
class Domain {
 public:
  enum class Kind { Interval, Ball };

  static Domain interval(double a, double b);
  static Domain ball(Point center, double radius);
  /// Box constructor kept for config parsing: returns an interval for d = 1 and throws
  /// std::invalid_argument for d >= 2.
  static Domain box(std::span<const double> lo, std::span<const double> hi);

  Kind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return center_.size(); }
  double volume() const noexcept { return volume_; }
  double diameter() const noexcept { return 2.0 * radius_; }
  const Point& center() const noexcept { return center_; }
  /// Half-length for intervals, radius for balls.
  double radius() const noexcept { return radius_; }
  double lower() const noexcept { return center_[0] - radius_; }
  double upper() const noexcept { return center_[0] + radius_; }

  bool contains(std::span<const double> x) const noexcept;

  /// Uniform draw from the domain into `out` (size d).
  void sample_uniform(RngStream& rng, std::span<double> out) const noexcept;

  std::string describe() const;

 private:
  Domain(Kind kind, Point center, double radius);

  Kind kind_;
  Point center_;
  double radius_;
  double volume_;
};

/// Uniform direction on the unit sphere in R^d.
void sample_direction(RngStream& rng, std::span<double> out) noexcept;

}  // namespace stablefield

#endif  // STABLEFIELD_DOMAIN_HPP

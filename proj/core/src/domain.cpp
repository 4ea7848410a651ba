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

#include "stablefield/domain.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace stablefield {

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_{dim}, coords_{std::move(coords)} {
  if (dim_ == 0 || coords_.size() % dim_ != 0) {
    throw std::invalid_argument("PointSet coordinates do not match the dimension");
  }
}

PointSet PointSet::from_values(std::span<const double> xs) { return PointSet{1, {xs.begin(), xs.end()}}; }

PointSet PointSet::linspace(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  if (n == 1) {
    xs[0] = 0.5 * (lo + hi);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
  }
  return PointSet{1, std::move(xs)};
}

void PointSet::push_back(std::span<const double> point) {
  if (dim_ == 0) {
    dim_ = point.size();
  }
  if (point.size() != dim_) {
    throw std::invalid_argument("point dimension does not match PointSet dimension");
  }
  coords_.insert(coords_.end(), point.begin(), point.end());
}

double distance(std::span<const double> a, std::span<const double> b) noexcept {
  if (a.size() == 1) {
    return std::abs(a[0] - b[0]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double unit_ball_volume(std::size_t d) {
  const double half = static_cast<double>(d) / 2.0;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double unit_sphere_area(std::size_t d) {
  const double half = static_cast<double>(d) / 2.0;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

Domain::Domain(Kind kind, Point center, double radius)
    : kind_{kind}, center_{std::move(center)}, radius_{radius},
      volume_{unit_ball_volume(center_.size()) * std::pow(radius, static_cast<double>(center_.size()))} {}

Domain Domain::interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("interval domain needs finite a < b");
  }
  return Domain{Kind::Interval, Point{0.5 * (a + b)}, 0.5 * (b - a)};
}

Domain Domain::ball(Point center, double radius) {
  if (center.empty()) {
    throw std::invalid_argument("ball domain needs a center of dimension >= 1");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball domain needs a positive finite radius");
  }
  if (center.size() == 1) {
    return interval(center[0] - radius, center[0] + radius);
  }
  return Domain{Kind::Ball, std::move(center), radius};
}

Domain Domain::box(std::span<const double> lo, std::span<const double> hi) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("box corners must have equal, positive dimension");
  }
  if (lo.size() == 1) {
    return interval(lo[0], hi[0]);
  }
  throw std::invalid_argument(
      "box domains are rejected in d >= 2: the Sobolev regularity results require a bounded domain "
      "with C-infinity smooth boundary; use a ball instead");
}

bool Domain::contains(std::span<const double> x) const noexcept {
  if (x.size() != center_.size()) {
    return false;
  }
  return distance(x, center_) < radius_;
}

void sample_direction(RngStream& rng, std::span<double> out) noexcept {
  if (out.size() == 1) {
    out[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    return;
  }
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& c : out) {
      c = rng.normal();
      norm += c * c;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& c : out) {
    c /= norm;
  }
}

void Domain::sample_uniform(RngStream& rng, std::span<double> out) const noexcept {
  const std::size_t d = center_.size();
  if (d == 1) {
    out[0] = center_[0] + radius_ * (2.0 * rng.uniform() - 1.0);
    return;
  }
  sample_direction(rng, out);
  const double r = radius_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = center_[i] + r * out[i];
  }
}

std::string Domain::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::Interval) {
    os << "interval(" << lower() << ", " << upper() << ")";
  } else {
    os << "ball(center=[";
    for (std::size_t i = 0; i < center_.size(); ++i) {
      os << (i ? ", " : "") << center_[i];
    }
    os << "], radius=" << radius_ << ")";
  }
  return os.str();
}

}  // namespace stablefield

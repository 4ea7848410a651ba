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

#include "stablefield/local_average.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stablefield {

namespace {

struct Interval1d {
  double lo;
  double hi;
};

Interval1d clip_interval(const Ball& ball, const Domain& domain) {
  const double lo = std::max(domain.lower(), ball.center[0] - ball.radius);
  const double hi = std::min(domain.upper(), ball.center[0] + ball.radius);
  return {lo, hi};
}

bool in_subset(std::span<const double> x, const Domain& domain, const std::optional<Ball>& subset) {
  return domain.contains(x) && (!subset || subset->contains(x));
}

// Calls visit(point) for every midpoint of a regular grid with `per_axis` cells per side on the
// box [lo, lo + side]^d.
template <class Visit>
void for_each_midpoint(std::span<const double> lo, std::span<const double> side, std::size_t per_axis,
                       Visit&& visit) {
  const std::size_t d = lo.size();
  std::vector<std::size_t> index(d, 0);
  std::vector<double> x(d);
  for (;;) {
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = lo[k] + (static_cast<double>(index[k]) + 0.5) * side[k] / static_cast<double>(per_axis);
    }
    visit(std::span<const double>{x});
    std::size_t k = 0;
    while (k < d && ++index[k] == per_axis) {
      index[k] = 0;
      ++k;
    }
    if (k == d) {
      return;
    }
  }
}

}  // namespace

double QuadratureRule::apply(std::span<const double> values) const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    sum += weights[i] * values[i];
  }
  return sum;
}

QuadratureRule averaging_rule(const Ball& ball, const Domain& domain, const QuadratureConfig& config,
                              RngStream* rng) {
  const std::size_t d = domain.dimension();
  if (ball.center.size() != d) {
    throw std::invalid_argument("ball and domain dimensions differ");
  }
  if (!(ball.radius > 0.0)) {
    throw std::invalid_argument("local average needs a positive radius");
  }
  if (config.points == 0) {
    throw std::invalid_argument("local average needs at least one quadrature point");
  }
  const double gap = distance(ball.center, domain.center());
  if (gap >= ball.radius + domain.radius()) {
    throw std::invalid_argument("ball does not intersect the domain");
  }

  QuadratureRule rule;
  rule.points = PointSet{d};

  if (config.kind == QuadratureConfig::Kind::MonteCarlo) {
    if (rng == nullptr) {
      throw std::invalid_argument("Monte Carlo local average needs a random stream");
    }
    rule.monte_carlo = true;
    const Domain proposal = d == 1 ? Domain::interval(ball.center[0] - ball.radius, ball.center[0] + ball.radius)
                                   : Domain::ball(ball.center, ball.radius);
    std::vector<double> x(d);
    std::size_t attempts = 0;
    const std::size_t max_attempts = 1000 * config.points;
    rule.points.reserve(config.points);
    while (rule.points.size() < config.points) {
      if (++attempts > max_attempts) {
        throw std::runtime_error("ball intersected with the domain is too small to sample");
      }
      proposal.sample_uniform(*rng, x);
      if (domain.contains(x)) {
        rule.points.push_back(x);
      }
    }
    rule.weights.assign(config.points, 1.0 / static_cast<double>(config.points));
    rule.measure = proposal.volume() * static_cast<double>(config.points) / static_cast<double>(attempts);
    return rule;
  }

  if (d == 1) {
    const Interval1d clipped = clip_interval(ball, domain);
    const std::size_t n = config.points;
    const double h = (clipped.hi - clipped.lo) / static_cast<double>(n);
    rule.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = clipped.lo + (static_cast<double>(i) + 0.5) * h;
      rule.points.push_back(std::span<const double>{&x, 1});
    }
    rule.weights.assign(n, 1.0 / static_cast<double>(n));
    rule.measure = clipped.hi - clipped.lo;
    return rule;
  }

  std::vector<double> lo(d);
  std::vector<double> side(d, 2.0 * ball.radius);
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] = ball.center[k] - ball.radius;
  }
  for (std::size_t per_axis = config.points; rule.points.empty(); per_axis *= 2) {
    if (per_axis > 64 * config.points) {
      throw std::runtime_error("ball intersected with the domain is too small for the grid rule");
    }
    std::size_t total = 0;
    for_each_midpoint(lo, side, per_axis, [&](std::span<const double> x) {
      ++total;
      if (ball.contains(x) && domain.contains(x)) {
        rule.points.push_back(x);
      }
    });
    const double box = std::pow(2.0 * ball.radius, static_cast<double>(d));
    rule.measure = box * static_cast<double>(rule.points.size()) / static_cast<double>(total);
  }
  if (gap + ball.radius <= domain.radius()) {
    rule.measure = unit_ball_volume(d) * std::pow(ball.radius, static_cast<double>(d));
  }
  rule.weights.assign(rule.points.size(), 1.0 / static_cast<double>(rule.points.size()));
  return rule;
}

Estimate local_average(const ScalarField& field, const Ball& ball, const Domain& domain,
                       const QuadratureConfig& config, RngStream* rng) {
  const QuadratureRule rule = averaging_rule(ball, domain, config, rng);
  const std::vector<double> values = field.evaluate(rule.points);
  const double value = rule.apply(values);
  if (!rule.monte_carlo) {
    return {value, 0.0};
  }
  return {value, standard_error(values)};
}

CubeQuadrature cube_quadrature_weights(const Domain& domain, const std::optional<Ball>& subset, int level) {
  if (level < 0) {
    throw std::invalid_argument("cube level must be >= 0");
  }
  const std::size_t d = domain.dimension();
  const double h = std::ldexp(1.0, -level);
  CubeQuadrature out;
  out.points = PointSet{d};

  if (d == 1) {
    double lo = domain.lower();
    double hi = domain.upper();
    if (subset) {
      const Interval1d clipped = clip_interval(*subset, domain);
      lo = clipped.lo;
      hi = clipped.hi;
    }
    if (!(hi > lo)) {
      throw std::invalid_argument("averaging set has zero volume");
    }
    const auto first = static_cast<long long>(std::floor(lo / h));
    const auto last = static_cast<long long>(std::ceil(hi / h));
    for (long long k = first; k < last; ++k) {
      const double a = std::max(lo, static_cast<double>(k) * h);
      const double b = std::min(hi, static_cast<double>(k + 1) * h);
      if (b > a) {
        const double mid = 0.5 * (a + b);
        out.points.push_back(std::span<const double>{&mid, 1});
        out.weights.push_back((b - a) / (hi - lo));
      }
    }
    return out;
  }

  std::vector<double> box_lo(d);
  std::vector<double> box_hi(d);
  for (std::size_t k = 0; k < d; ++k) {
    box_lo[k] = domain.center()[k] - domain.radius();
    box_hi[k] = domain.center()[k] + domain.radius();
    if (subset) {
      box_lo[k] = std::max(box_lo[k], subset->center[k] - subset->radius);
      box_hi[k] = std::min(box_hi[k], subset->center[k] + subset->radius);
    }
  }
  std::vector<long long> first(d);
  std::vector<long long> count(d);
  for (std::size_t k = 0; k < d; ++k) {
    first[k] = static_cast<long long>(std::floor(box_lo[k] / h));
    count[k] = static_cast<long long>(std::ceil(box_hi[k] / h)) - first[k];
  }
  const auto per_axis = static_cast<std::size_t>(std::ceil(std::pow(1024.0, 1.0 / static_cast<double>(d)) - 1e-9));
  const double cell_volume = std::pow(h, static_cast<double>(d)) / std::pow(static_cast<double>(per_axis), static_cast<double>(d));

  std::vector<long long> index(d, 0);
  std::vector<double> corner(d);
  const std::vector<double> side(d, h);
  std::vector<double> centroid(d);
  double total = 0.0;
  for (;;) {
    for (std::size_t k = 0; k < d; ++k) {
      corner[k] = static_cast<double>(first[k] + index[k]) * h;
    }
    std::size_t inside = 0;
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for_each_midpoint(corner, side, per_axis, [&](std::span<const double> x) {
      if (in_subset(x, domain, subset)) {
        ++inside;
        for (std::size_t k = 0; k < d; ++k) {
          centroid[k] += x[k];
        }
      }
    });
    if (inside > 0) {
      for (double& c : centroid) {
        c /= static_cast<double>(inside);
      }
      const double volume = cell_volume * static_cast<double>(inside);
      out.points.push_back(centroid);
      out.weights.push_back(volume);
      total += volume;
    }
    std::size_t k = 0;
    while (k < d && ++index[k] == count[k]) {
      index[k] = 0;
      ++k;
    }
    if (k == d) {
      break;
    }
  }
  if (total <= 0.0) {
    throw std::invalid_argument("averaging set has zero volume");
  }
  for (double& w : out.weights) {
    w /= total;
  }
  return out;
}

}  // namespace stablefield

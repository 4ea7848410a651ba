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

#include "stablefield/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stablefield/parallel.hpp"

namespace stablefield {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

ValidationCheck make_check(std::string name, std::string inequality, bool passed, std::string detail) {
  return ValidationCheck{std::move(name), std::move(inequality), passed, std::move(detail)};
}

void require_finite(double value, std::span<const double> x) {
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << "non-finite field value at x = (";
    for (std::size_t i = 0; i < x.size(); ++i) {
      os << (i ? ", " : "") << x[i];
    }
    os << ")";
    throw std::domain_error(os.str());
  }
}

struct ChunkPlan {
  std::size_t chunks;
  std::size_t per_chunk;
  std::size_t total;

  std::size_t size(std::size_t c) const noexcept {
    const std::size_t begin = c * per_chunk;
    return begin >= total ? 0 : std::min(per_chunk, total - begin);
  }
};

ChunkPlan plan(std::size_t total, std::size_t chunks) {
  if (total == 0) {
    throw std::invalid_argument("Monte Carlo budget must be positive");
  }
  chunks = std::clamp<std::size_t>(chunks, 1, total);
  return {chunks, (total + chunks - 1) / chunks, total};
}

// Merge per-chunk moments in index order.
RunningMoments reduce(const std::vector<RunningMoments>& parts) {
  RunningMoments all;
  for (const auto& m : parts) {
    all.merge(m);
  }
  return all;
}

Estimate root_estimate(const RunningMoments& moments, double scale, double p) {
  const double mean_value = scale * moments.mean();
  const double se_mean = scale * moments.standard_error();
  if (mean_value <= 0.0) {
    return {0.0, 0.0};
  }
  const double value = std::pow(mean_value, 1.0 / p);
  return {value, value / (p * mean_value) * se_mean};
}

}  // namespace

SobolevParams::SobolevParams(double s, double p, std::size_t d) : s_{s}, p_{p}, d_{d} {
  if (d == 0) {
    throw std::invalid_argument("Sobolev parameters need a dimension d >= 1");
  }
  if (!(s > 0.0 && s < 1.0)) {
    throw std::invalid_argument("smoothness s must lie in (0, 1), got " + fmt(s));
  }
  const double dd = static_cast<double>(d);
  if (!(p > dd / (dd + s)) || !std::isfinite(p)) {
    throw std::invalid_argument("integrability p = " + fmt(p) + " must exceed d/(d+s) = " + fmt(dd / (dd + s)));
  }
}

bool ValidationReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

std::string ValidationReport::failures() const {
  std::string out;
  for (const auto& c : checks) {
    if (!c.passed) {
      out += (out.empty() ? "" : ", ") + c.name;
    }
  }
  return out;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

ValidationReport validate_params(std::size_t d, double lambda, double alpha, double s, double p,
                                 std::optional<EmbeddingTarget> target) {
  ValidationReport report;
  const double dd = static_cast<double>(d);
  const double critical = dd / (dd + lambda);

  report.checks.push_back(make_check("dimension", "d >= 1", d >= 1, "d = " + std::to_string(d)));
  report.checks.push_back(
      make_check("lambda_range", "0 < lambda <= 1", lambda > 0.0 && lambda <= 1.0, "lambda = " + fmt(lambda)));
  report.checks.push_back(make_check("alpha_range", "d/(d+lambda) < alpha < 2", alpha > critical && alpha < 2.0,
                                     "d/(d+lambda) = " + fmt(critical) + ", alpha = " + fmt(alpha)));
  report.checks.push_back(make_check("p_range", "d/(d+lambda) < p < alpha", p > critical && p < alpha,
                                     "d/(d+lambda) = " + fmt(critical) + ", p = " + fmt(p) + ", alpha = " + fmt(alpha)));
  report.checks.push_back(
      make_check("s_range", "0 < s < lambda", s > 0.0 && s < lambda, "s = " + fmt(s) + ", lambda = " + fmt(lambda)));
  const double sobolev_floor = dd / (dd + s);
  report.checks.push_back(make_check("p_sobolev", "p > d/(d+s)", s > 0.0 && p > sobolev_floor,
                                     "d/(d+s) = " + fmt(sobolev_floor) + ", p = " + fmt(p)));

  if (target) {
    const double s2 = target->s;
    const double p2 = target->p;
    const bool ordered = p2 > p && s2 > 0.0 && s2 < s && p > 0.0;
    const double lhs = s2 - dd / p2;
    const double rhs = s - dd / p;
    const double tol = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    const std::string detail = "p' = " + fmt(p2) + ", s' = " + fmt(s2) + ", s'-d/p' = " + fmt(lhs) +
                               ", s-d/p = " + fmt(rhs);
    report.checks.push_back(make_check("embedding_continuous", "p' > p, 0 < s' < s, s'-d/p' = s-d/p",
                                       ordered && std::abs(lhs - rhs) <= tol, detail));
    report.checks.push_back(make_check("embedding_compact", "p' > p, 0 < s' < s, s'-d/p' > s-d/p",
                                       ordered && lhs > rhs + tol, detail));
  }
  return report;
}

double radial_proposal_exponent(const SobolevParams& params, std::optional<double> assumed_holder) noexcept {
  if (assumed_holder && *assumed_holder > params.s()) {
    return (*assumed_holder - params.s()) * params.p() / 2.0;
  }
  return std::min(1.0, static_cast<double>(params.dimension()));
}

Estimate lp_norm_estimate(const ScalarField& field, const Domain& domain, const SobolevParams& params,
                          const MonteCarloConfig& mc, const RngStream& rng) {
  const std::size_t d = domain.dimension();
  if (field.dimension() != d || params.dimension() != d) {
    throw std::invalid_argument("field, domain and Sobolev parameters disagree on the dimension");
  }
  const ChunkPlan chunks = plan(mc.points, mc.chunks);
  std::vector<RunningMoments> parts(chunks.chunks);
  const double p = params.p();
  parallel_for(chunks.chunks, [&](std::size_t c) {
    RngStream stream = rng.substream(c);
    const std::size_t n = chunks.size(c);
    PointSet xs{d, std::vector<double>(n * d)};
    for (std::size_t i = 0; i < n; ++i) {
      domain.sample_uniform(stream, xs[i]);
    }
    std::vector<double> values(n);
    field.evaluate(xs, values);
    for (std::size_t i = 0; i < n; ++i) {
      require_finite(values[i], xs[i]);
      parts[c].add(std::pow(std::abs(values[i]), p));
    }
  });
  return root_estimate(reduce(parts), domain.volume(), p);
}

Estimate seminorm_estimate(const ScalarField& field, const Domain& domain, const SobolevParams& params,
                           const MonteCarloConfig& mc, const RngStream& rng) {
  const std::size_t d = domain.dimension();
  if (field.dimension() != d || params.dimension() != d) {
    throw std::invalid_argument("field, domain and Sobolev parameters disagree on the dimension");
  }
  const ChunkPlan chunks = plan(mc.pairs, mc.chunks);
  const double p = params.p();
  const double gamma = radial_proposal_exponent(params, mc.assumed_holder);
  const double diam = domain.diameter();
  const double dd = static_cast<double>(d);
  const double kernel_exponent = params.s() * p + dd;
  // W = m(U) |S^{d-1}| r^{d-1} g(x, y) / q(r) with q(r) = gamma r^(gamma-1) / diam^gamma.
  const double constant = domain.volume() * unit_sphere_area(d) * std::pow(diam, gamma) / gamma;

  std::vector<RunningMoments> parts(chunks.chunks);
  parallel_for(chunks.chunks, [&](std::size_t c) {
    RngStream stream = rng.substream(c);
    const std::size_t n = chunks.size(c);
    PointSet xs{d};
    PointSet ys{d};
    xs.reserve(n);
    ys.reserve(n);
    std::vector<double> radii;
    radii.reserve(n);
    std::vector<double> x(d);
    std::vector<double> dir(d);
    std::vector<double> y(d);
    for (std::size_t i = 0; i < n; ++i) {
      domain.sample_uniform(stream, x);
      const double r = diam * std::pow(stream.uniform(), 1.0 / gamma);
      sample_direction(stream, dir);
      for (std::size_t k = 0; k < d; ++k) {
        y[k] = x[k] + r * dir[k];
      }
      if (domain.contains(y)) {
        xs.push_back(x);
        ys.push_back(y);
        radii.push_back(r);
      }
    }
    std::vector<double> fx(xs.size());
    std::vector<double> fy(ys.size());
    field.evaluate(xs, fx);
    field.evaluate(ys, fy);
    RunningMoments& moments = parts[c];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      require_finite(fx[i], xs[i]);
      require_finite(fy[i], ys[i]);
      const double r = radii[i];
      const double diff = std::abs(fx[i] - fy[i]);
      const double weight =
          diff == 0.0 ? 0.0
                      : constant * std::exp(p * std::log(diff) + (dd - 1.0 - kernel_exponent - gamma + 1.0) * std::log(r));
      moments.add(weight);
    }
    for (std::size_t i = xs.size(); i < n; ++i) {
      moments.add(0.0);
    }
  });
  return root_estimate(reduce(parts), 1.0, p);
}

QuasinormEstimate quasinorm(const ScalarField& field, const Domain& domain, const SobolevParams& params,
                            const MonteCarloConfig& mc, const RngStream& rng) {
  const Estimate lp = lp_norm_estimate(field, domain, params, mc, rng.substream(0x4c50));
  const Estimate semi = seminorm_estimate(field, domain, params, mc, rng.substream(0x5345));
  QuasinormEstimate out;
  out.lp_part = lp.value;
  out.se_lp = lp.standard_error;
  out.seminorm_part = semi.value;
  out.se_seminorm = semi.standard_error;
  out.total = lp.value + semi.value;
  out.pair_count = mc.pairs;
  out.point_count = mc.points;
  return out;
}

Estimate quasi_distance(const ScalarField& f, const ScalarField& g, const Domain& domain, const SobolevParams& params,
                        const MonteCarloConfig& mc, const RngStream& rng) {
  const FunctionField difference{f.dimension(), [&](std::span<const double> x) { return f(x) - g(x); }};
  const QuasinormEstimate q = quasinorm(difference, domain, params, mc, rng);
  const double e = params.metric_exponent();
  if (q.total <= 0.0) {
    return {0.0, 0.0};
  }
  const double value = std::pow(q.total, e);
  const double se_total = std::hypot(q.se_lp, q.se_seminorm);
  return {value, e * value / q.total * se_total};
}

PointSet midpoint_grid(const Domain& interval, std::size_t n) {
  if (interval.dimension() != 1) {
    throw std::invalid_argument("midpoint grids are only defined on intervals");
  }
  if (n == 0) {
    throw std::invalid_argument("midpoint grid needs at least one cell");
  }
  const double h = (interval.upper() - interval.lower()) / static_cast<double>(n);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = interval.lower() + (static_cast<double>(i) + 0.5) * h;
  }
  return PointSet{1, std::move(xs)};
}

GridSeminormKernel::GridSeminormKernel(const Domain& interval, std::size_t n, const SobolevParams& params)
    : p_{params.p()}, h_{(interval.upper() - interval.lower()) / static_cast<double>(n)}, weights_(n, 0.0) {
  if (interval.dimension() != 1 || params.dimension() != 1) {
    throw std::invalid_argument("grid seminorm is only available in d = 1");
  }
  const double exponent = params.s() * params.p() + 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    weights_[k] = h_ * h_ * std::pow(static_cast<double>(k) * h_, -exponent);
  }
}

GridQuasinorm GridSeminormKernel::operator()(std::span<const double> values) const {
  const std::size_t n = weights_.size();
  if (values.size() != n) {
    throw std::invalid_argument("grid values do not match the kernel size");
  }
  double lp = 0.0;
  for (const double v : values) {
    lp += std::pow(std::abs(v), p_);
  }
  lp *= h_;
  double semi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diff = std::abs(values[i] - values[j]);
      if (diff > 0.0) {
        semi += weights_[j - i] * std::pow(diff, p_);
      }
    }
  }
  semi *= 2.0;
  GridQuasinorm out;
  out.lp_part = std::pow(lp, 1.0 / p_);
  out.seminorm_part = std::pow(semi, 1.0 / p_);
  out.total = out.lp_part + out.seminorm_part;
  return out;
}

GridQuasinorm quasinorm_grid_1d(std::span<const double> values, const Domain& interval, const SobolevParams& params) {
  return GridSeminormKernel{interval, values.size(), params}(values);
}

double seminorm_power_grid_1d(std::span<const double> values, const Domain& interval, const SobolevParams& params) {
  const GridQuasinorm q = quasinorm_grid_1d(values, interval, params);
  return std::pow(q.seminorm_part, params.p());
}

}  // namespace stablefield

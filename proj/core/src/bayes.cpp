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

#include "stablefield/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "stablefield/parallel.hpp"
#include "stablefield/stable.hpp"

namespace stablefield {

namespace {

constexpr std::uint64_t kReferenceStream = 0x52454645ULL;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// Midpoint nodes in t on (-pi/2, pi/2) mapped through x = sigma tan t, with weights
// (pi/n) sigma sec^2 t times the SaS(alpha, sigma) density, i.e. quadrature for E[g(X)].
struct StableNodes {
  std::vector<double> x;
  std::vector<double> w;
};

StableNodes stable_nodes(double alpha, double sigma, std::size_t n) {
  StableNodes nodes;
  if (sigma == 0.0) {
    nodes.x = {0.0};
    nodes.w = {1.0};
    return nodes;
  }
  const StableParams params{alpha, sigma};
  const double step = std::numbers::pi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -std::numbers::pi / 2.0 + (static_cast<double>(i) + 0.5) * step;
    const double x = sigma * std::tan(t);
    const double c = std::cos(t);
    nodes.x.push_back(x);
    nodes.w.push_back(step * sigma / (c * c) * stable_density(params, x));
  }
  return nodes;
}

bool is_linear(const ForwardOp& op) { return op.kind() != ForwardOp::Kind::Composite; }

}  // namespace

CompiledForward::CompiledForward(PointSet points, std::vector<std::size_t> offsets, std::vector<double> weights,
                                 Map map, std::size_t output_dim)
    : points_{std::move(points)},
      offsets_{std::move(offsets)},
      weights_{std::move(weights)},
      map_{std::move(map)},
      output_dim_{output_dim} {
  if (offsets_.empty() || offsets_.back() != weights_.size() || weights_.size() != points_.size()) {
    throw std::invalid_argument("compiled forward map has inconsistent quadrature tables");
  }
  if (!map_ && output_dim_ != linear_dim()) {
    throw std::invalid_argument("linear forward map output dimension must equal its functional count");
  }
}

std::vector<double> CompiledForward::linear(std::span<const double> values) const {
  std::vector<double> out(linear_dim());
  for (std::size_t k = 0; k + 1 < offsets_.size(); ++k) {
    double sum = 0.0;
    for (std::size_t j = offsets_[k]; j < offsets_[k + 1]; ++j) {
      sum += weights_[j] * values[j];
    }
    out[k] = sum;
  }
  return out;
}

std::vector<double> CompiledForward::apply_values(std::span<const double> values) const {
  std::vector<double> lin = linear(values);
  if (!map_) {
    return lin;
  }
  std::vector<double> out = map_(lin);
  if (out.size() != output_dim_) {
    throw std::runtime_error("forward map returned " + std::to_string(out.size()) + " values, expected " +
                             std::to_string(output_dim_));
  }
  return out;
}

std::vector<double> CompiledForward::apply(const ScalarField& field) const {
  return apply_values(field.evaluate(points_));
}

CompiledForward CompiledForward::concat(const std::vector<CompiledForward>& parts) {
  if (parts.empty()) {
    throw std::invalid_argument("cannot concatenate zero forward maps");
  }
  PointSet points{parts.front().points_.dim()};
  std::vector<std::size_t> offsets{0};
  std::vector<double> weights;
  bool any_map = false;
  std::size_t output_dim = 0;
  struct Slice {
    std::size_t linear_dim;
    Map map;
  };
  std::vector<Slice> slices;
  for (const CompiledForward& part : parts) {
    const std::size_t base = points.size();
    for (std::size_t i = 0; i < part.points_.size(); ++i) {
      points.push_back(part.points_[i]);
    }
    weights.insert(weights.end(), part.weights_.begin(), part.weights_.end());
    for (std::size_t k = 1; k < part.offsets_.size(); ++k) {
      offsets.push_back(base + part.offsets_[k]);
    }
    any_map = any_map || static_cast<bool>(part.map_);
    output_dim += part.output_dim_;
    slices.push_back({part.linear_dim(), part.map_});
  }
  Map map;
  if (any_map) {
    map = [slices](std::span<const double> lin) {
      std::vector<double> out;
      std::size_t offset = 0;
      for (const Slice& s : slices) {
        const std::span<const double> piece = lin.subspan(offset, s.linear_dim);
        if (s.map) {
          const std::vector<double> mapped = s.map(piece);
          out.insert(out.end(), mapped.begin(), mapped.end());
        } else {
          out.insert(out.end(), piece.begin(), piece.end());
        }
        offset += s.linear_dim;
      }
      return out;
    };
  }
  return CompiledForward{std::move(points), std::move(offsets), std::move(weights), std::move(map), output_dim};
}

CompiledForward CompiledForward::chain(Map outer, std::size_t output_dim) const {
  Map inner = map_;
  Map combined = inner ? Map{[inner, outer](std::span<const double> lin) { return outer(inner(lin)); }} : outer;
  return CompiledForward{points_, offsets_, weights_, std::move(combined), output_dim};
}

ForwardOp ForwardOp::point_evals(PointSet points, double smoothing_radius) {
  if (points.empty()) {
    throw std::invalid_argument("point evaluation operator needs at least one point");
  }
  if (!(smoothing_radius >= 0.0)) {
    throw std::invalid_argument("smoothing radius must be >= 0");
  }
  ForwardOp op;
  op.kind_ = Kind::PointEvals;
  op.output_dim_ = points.size();
  op.points_ = std::move(points);
  op.radius_ = smoothing_radius;
  return op;
}

ForwardOp ForwardOp::local_averages(std::vector<Ball> balls) {
  if (balls.empty()) {
    throw std::invalid_argument("local-average operator needs at least one ball");
  }
  for (const Ball& b : balls) {
    if (!(b.radius > 0.0)) {
      throw std::invalid_argument("local-average balls need a positive radius");
    }
  }
  ForwardOp op;
  op.kind_ = Kind::LocalAverages;
  op.output_dim_ = balls.size();
  op.balls_ = std::move(balls);
  return op;
}

ForwardOp ForwardOp::composite(std::vector<ForwardOp> inner, CompiledForward::Map map, std::size_t output_dim,
                               double holder_exponent, std::string description) {
  if (inner.empty() || !map || output_dim == 0) {
    throw std::invalid_argument("composite operator needs inner operators, a map and an output dimension");
  }
  if (!(holder_exponent > 0.0 && holder_exponent <= 1.0)) {
    throw std::invalid_argument("composite map Hoelder exponent must lie in (0, 1]");
  }
  ForwardOp op;
  op.kind_ = Kind::Composite;
  op.inner_ = std::move(inner);
  op.map_ = std::move(map);
  op.output_dim_ = output_dim;
  op.holder_exponent_ = holder_exponent;
  op.description_ = std::move(description);
  return op;
}

std::string ForwardOp::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::PointEvals:
      os << (radius_ > 0.0 ? "smoothed point evaluations (r = " + fmt(radius_) + ")" : "point evaluations") << " at";
      for (std::size_t i = 0; i < points_.size(); ++i) {
        os << " (";
        for (std::size_t k = 0; k < points_.dim(); ++k) {
          os << (k ? "," : "") << points_[i][k];
        }
        os << ")";
      }
      break;
    case Kind::LocalAverages:
      os << "local averages over";
      for (const Ball& b : balls_) {
        os << " B((";
        for (std::size_t k = 0; k < b.center.size(); ++k) {
          os << (k ? "," : "") << b.center[k];
        }
        os << ")," << b.radius << ")";
      }
      break;
    case Kind::Composite:
      os << (description_.empty() ? "composite map" : description_) << " of [";
      for (std::size_t i = 0; i < inner_.size(); ++i) {
        os << (i ? "; " : "") << inner_[i].describe();
      }
      os << "]";
      break;
  }
  return os.str();
}

CompiledForward ForwardOp::compile(const Domain& domain, const QuadratureConfig& quadrature) const {
  const std::size_t d = domain.dimension();
  if (kind_ == Kind::Composite) {
    std::vector<CompiledForward> parts;
    for (const ForwardOp& op : inner_) {
      parts.push_back(op.compile(domain, quadrature));
    }
    return CompiledForward::concat(parts).chain(map_, output_dim_);
  }
  if (quadrature.kind != QuadratureConfig::Kind::Grid) {
    throw std::invalid_argument("forward operators are discretized with grid averaging rules");
  }
  PointSet points{d};
  std::vector<std::size_t> offsets{0};
  std::vector<double> weights;
  const auto add_rule = [&](const QuadratureRule& rule) {
    for (std::size_t j = 0; j < rule.points.size(); ++j) {
      points.push_back(rule.points[j]);
      weights.push_back(rule.weights[j]);
    }
    offsets.push_back(points.size());
  };
  if (kind_ == Kind::PointEvals) {
    if (points_.dim() != d) {
      throw std::invalid_argument("observation points do not match the domain dimension");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!domain.contains(points_[i])) {
        throw std::invalid_argument("observation points must lie inside the domain");
      }
      if (radius_ > 0.0) {
        const std::span<const double> x = points_[i];
        add_rule(averaging_rule(Ball{Point(x.begin(), x.end()), radius_}, domain, quadrature));
      } else {
        points.push_back(points_[i]);
        weights.push_back(1.0);
        offsets.push_back(points.size());
      }
    }
  } else {
    for (const Ball& b : balls_) {
      if (b.center.size() != d || !domain.contains(b.center)) {
        throw std::invalid_argument("local-average ball centres must lie inside the domain");
      }
      add_rule(averaging_rule(b, domain, quadrature));
    }
  }
  return CompiledForward{std::move(points), std::move(offsets), std::move(weights), {}, output_dim_};
}

NoiseModel::NoiseModel(Kind kind, double scale, std::size_t dim) : kind_{kind}, scale_{scale}, dim_{dim} {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("noise scale must be positive and finite");
  }
  if (dim == 0) {
    throw std::invalid_argument("noise dimension must be >= 1");
  }
}

NoiseModel NoiseModel::gaussian(double scale, std::size_t dim) { return NoiseModel{Kind::Gaussian, scale, dim}; }

NoiseModel NoiseModel::cauchy(double scale, std::size_t dim) { return NoiseModel{Kind::Cauchy, scale, dim}; }

std::string NoiseModel::name() const { return kind_ == Kind::Gaussian ? "gaussian" : "cauchy"; }

double NoiseModel::log_density(std::span<const double> residual) const {
  if (residual.size() != dim_) {
    throw std::invalid_argument("residual has dimension " + std::to_string(residual.size()) + ", noise model " +
                                std::to_string(dim_));
  }
  const double tau = scale_;
  double total = 0.0;
  if (kind_ == Kind::Gaussian) {
    const double constant = -0.5 * std::log(2.0 * std::numbers::pi * tau * tau);
    for (const double r : residual) {
      total += constant - r * r / (2.0 * tau * tau);
    }
  } else {
    for (const double r : residual) {
      const double z = r / tau;
      total -= std::log(std::numbers::pi * tau) + std::log1p(z * z);
    }
  }
  return total;
}

double log_likelihood(const NoiseModel& noise, std::span<const double> u, std::span<const double> g) {
  if (u.size() != g.size() || u.size() != noise.dimension()) {
    throw std::invalid_argument("observation, forward image and noise model dimensions differ");
  }
  std::vector<double> residual(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    residual[i] = u[i] - g[i];
  }
  return noise.log_density(residual);
}

std::vector<double> PosteriorEnsemble::normalized_weights() const {
  if (log_weights.empty()) {
    throw std::invalid_argument("empty posterior ensemble");
  }
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> w(log_weights.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = std::exp(log_weights[j] - top);
    sum += w[j];
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw std::runtime_error("posterior weights are degenerate");
  }
  for (double& x : w) {
    x /= sum;
  }
  return w;
}

void finalize_ensemble(PosteriorEnsemble& ensemble) {
  if (ensemble.log_weights.empty()) {
    throw std::invalid_argument("empty posterior ensemble");
  }
  const double top = *std::max_element(ensemble.log_weights.begin(), ensemble.log_weights.end());
  if (!std::isfinite(top)) {
    throw std::runtime_error("posterior log-weights are not finite");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double lw : ensemble.log_weights) {
    const double w = std::exp(lw - top);
    sum += w;
    sum_sq += w * w;
  }
  ensemble.log_normalizer = top + std::log(sum) - std::log(static_cast<double>(ensemble.size()));
  ensemble.ess = sum * sum / sum_sq;
}

PosteriorEnsemble posterior_importance(const PosteriorProblem& problem, const FieldSampler& sampler,
                                       std::size_t width, std::size_t n_draws, const RngStream& rng) {
  if (n_draws == 0) {
    throw std::invalid_argument("posterior sampler needs at least one draw");
  }
  const std::size_t m = problem.forward.output_dim();
  if (problem.observation.size() != m || problem.noise.dimension() != m) {
    throw std::invalid_argument("observation, forward operator and noise model dimensions differ");
  }
  std::vector<CompiledForward> parts{problem.forward.compile(problem.domain, problem.quadrature)};
  for (const ForwardOp& op : problem.functionals) {
    parts.push_back(op.compile(problem.domain, problem.quadrature));
  }
  const CompiledForward all = CompiledForward::concat(parts);
  const bool own_functionals = !problem.functionals.empty();

  PosteriorEnsemble ensemble;
  ensemble.forward_images.resize(n_draws);
  ensemble.functional_values.resize(n_draws);
  ensemble.log_weights.resize(n_draws);
  parallel_for(n_draws, [&](std::size_t j) {
    const std::unique_ptr<ScalarField> field = sampler(width, rng.substream(j));
    std::vector<double> out = all.apply(*field);
    for (const double v : out) {
      if (!std::isfinite(v)) {
        throw std::runtime_error("non-finite forward image for draw " + std::to_string(j));
      }
    }
    std::vector<double> image(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(m));
    ensemble.log_weights[j] = log_likelihood(problem.noise, problem.observation, image);
    ensemble.functional_values[j] =
        own_functionals ? std::vector<double>(out.begin() + static_cast<std::ptrdiff_t>(m), out.end()) : image;
    ensemble.forward_images[j] = std::move(image);
  });
  finalize_ensemble(ensemble);
  return ensemble;
}

PosteriorEnsemble posterior_importance(const PosteriorProblem& problem, std::size_t width, std::size_t n_draws,
                                       const RngStream& rng) {
  return posterior_importance(problem, network_sampler(problem.network), width, n_draws, rng);
}

Estimate posterior_expectation(const PosteriorEnsemble& ensemble, std::span<const double> values) {
  if (values.size() != ensemble.size()) {
    throw std::invalid_argument("one functional value per ensemble member is required");
  }
  const std::vector<double> w = ensemble.normalized_weights();
  double estimate = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    estimate += w[j] * values[j];
  }
  double variance = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double dev = values[j] - estimate;
    variance += w[j] * w[j] * dev * dev;
  }
  return {estimate, std::sqrt(variance)};
}

namespace {

std::vector<double> column(const PosteriorEnsemble& ensemble, std::size_t index) {
  std::vector<double> values(ensemble.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (index >= ensemble.functional_values[j].size()) {
      throw std::out_of_range("functional index out of range");
    }
    values[j] = ensemble.functional_values[j][index];
  }
  return values;
}

}  // namespace

Estimate posterior_expectation(const PosteriorEnsemble& ensemble, std::size_t index) {
  return posterior_expectation(ensemble, column(ensemble, index));
}

Estimate prior_expectation(const PosteriorEnsemble& ensemble, std::size_t index) {
  const std::vector<double> values = column(ensemble, index);
  return {mean(values), standard_error(values)};
}

namespace {

OracleResult oracle_at(const PosteriorProblem& problem, const CompiledForward& forward,
                       const CompiledForward& functionals, std::size_t nodes) {
  const NetworkConfig& net = problem.network;
  const NetworkScales& s = net.scales;
  const StableNodes u_nodes = stable_nodes(net.alpha, s.sigma_u, nodes);
  const StableNodes a_nodes = stable_nodes(net.alpha, s.sigma_a, nodes);
  const StableNodes v_nodes = stable_nodes(net.alpha, s.sigma_v, nodes);
  const std::size_t m = forward.output_dim();
  const std::size_t k_count = functionals.output_dim();
  const ActivationSpec phi = net.activation;

  // Accumulated per u node, then reduced in order.
  std::vector<double> evidence(u_nodes.x.size(), 0.0);
  std::vector<std::vector<double>> numer(u_nodes.x.size(), std::vector<double>(k_count, 0.0));
  parallel_for(u_nodes.x.size(), [&](std::size_t i) {
    const double u = u_nodes.x[i];
    std::vector<double> fvals(forward.points().size());
    std::vector<double> gvals(functionals.points().size());
    std::vector<double> image(m);
    for (std::size_t j = 0; j < a_nodes.x.size(); ++j) {
      const double a = a_nodes.x[j];
      for (std::size_t q = 0; q < fvals.size(); ++q) {
        fvals[q] = phi(u * forward.points()[q][0] + a);
      }
      for (std::size_t q = 0; q < gvals.size(); ++q) {
        gvals[q] = phi(u * functionals.points()[q][0] + a);
      }
      const std::vector<double> g = forward.linear(fvals);
      const std::vector<double> f = functionals.linear(gvals);
      const double outer = u_nodes.w[i] * a_nodes.w[j];
      for (std::size_t l = 0; l < v_nodes.x.size(); ++l) {
        const double v = v_nodes.x[l];
        for (std::size_t k = 0; k < m; ++k) {
          image[k] = v * g[k];
        }
        const double weight = outer * v_nodes.w[l] * std::exp(log_likelihood(problem.noise, problem.observation, image));
        evidence[i] += weight;
        for (std::size_t k = 0; k < k_count; ++k) {
          numer[i][k] += weight * v * f[k];
        }
      }
    }
  });
  double z = 0.0;
  std::vector<double> num(k_count, 0.0);
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    z += evidence[i];
    for (std::size_t k = 0; k < k_count; ++k) {
      num[k] += numer[i][k];
    }
  }
  if (!(z > 0.0)) {
    throw std::runtime_error("oracle evidence underflowed");
  }
  OracleResult result;
  result.log_evidence = std::log(z);
  for (const double n : num) {
    result.means.push_back(n / z);
  }
  return result;
}

}  // namespace

OracleResult tiny_grid_oracle(const PosteriorProblem& problem, std::size_t nodes) {
  const NetworkConfig& net = problem.network;
  net.validate();
  if (net.widths.size() != 1 || net.widths[0] != 1) {
    throw std::invalid_argument("the grid oracle handles width-1 shallow networks only");
  }
  if (net.input_dim != 1 || problem.domain.dimension() != 1) {
    throw std::invalid_argument("the grid oracle handles d = 1 only");
  }
  if (net.scales.sigma_b != 0.0) {
    throw std::invalid_argument("the grid oracle needs a zero output-bias scale");
  }
  if (!is_linear(problem.forward)) {
    throw std::invalid_argument("the grid oracle needs a linear forward operator");
  }
  for (const ForwardOp& op : problem.functionals) {
    if (!is_linear(op)) {
      throw std::invalid_argument("the grid oracle needs linear functionals");
    }
  }
  if (nodes < 8 || nodes % 2 != 0) {
    throw std::invalid_argument("the grid oracle needs an even node count >= 8");
  }
  if (problem.observation.size() != problem.forward.output_dim()) {
    throw std::invalid_argument("observation and forward operator dimensions differ");
  }
  const CompiledForward forward = problem.forward.compile(problem.domain, problem.quadrature);
  std::vector<CompiledForward> parts;
  for (const ForwardOp& op : problem.functionals) {
    parts.push_back(op.compile(problem.domain, problem.quadrature));
  }
  const CompiledForward functionals = parts.empty() ? forward : CompiledForward::concat(parts);

  OracleResult fine = oracle_at(problem, forward, functionals, nodes);
  const OracleResult coarse = oracle_at(problem, forward, functionals, nodes / 2);
  for (std::size_t k = 0; k < fine.means.size(); ++k) {
    fine.quadrature_errors.push_back(std::abs(fine.means[k] - coarse.means[k]));
  }
  return fine;
}

namespace {

PosteriorConvergenceRow summarize(const PosteriorEnsemble& ensemble, std::size_t width) {
  PosteriorConvergenceRow row;
  row.width = width;
  row.ess = ensemble.ess;
  const std::size_t k_count = ensemble.functional_values.front().size();
  for (std::size_t k = 0; k < k_count; ++k) {
    const Estimate e = posterior_expectation(ensemble, k);
    row.means.push_back(e.value);
    row.standard_errors.push_back(e.standard_error);
  }
  return row;
}

}  // namespace

PosteriorConvergenceReport posterior_convergence_study(const PosteriorProblem& problem,
                                                       const std::vector<std::size_t>& widths,
                                                       std::size_t reference_width, std::size_t n_draws,
                                                       const RngStream& rng) {
  if (widths.empty()) {
    throw std::invalid_argument("posterior convergence study needs widths");
  }
  for (std::size_t w = 1; w < widths.size(); ++w) {
    if (widths[w] <= widths[w - 1]) {
      throw std::invalid_argument("posterior convergence widths must be strictly increasing");
    }
  }
  if (reference_width < widths.back()) {
    throw std::invalid_argument("reference width must be at least the largest study width");
  }
  PosteriorConvergenceReport report;
  report.reference = summarize(
      posterior_importance(problem, reference_width, n_draws, rng.substream(kReferenceStream)), reference_width);
  for (const std::size_t width : widths) {
    PosteriorConvergenceRow row = summarize(posterior_importance(problem, width, n_draws, rng), width);
    double var = 0.0;
    for (std::size_t k = 0; k < row.means.size(); ++k) {
      row.discrepancy += std::abs(row.means[k] - report.reference.means[k]);
      var += row.standard_errors[k] * row.standard_errors[k] +
             report.reference.standard_errors[k] * report.reference.standard_errors[k];
    }
    row.discrepancy_se = std::sqrt(var);
    report.rows.push_back(std::move(row));
  }
  return report;
}

Verdict posterior_convergence_verdict(const PosteriorConvergenceReport& report, double se_multiplier,
                                      double final_multiplier) {
  if (report.rows.empty()) {
    return {false, "empty report"};
  }
  Verdict verdict{true, ""};
  std::ostringstream os;
  for (std::size_t k = 1; k < report.rows.size(); ++k) {
    const auto& prev = report.rows[k - 1];
    const auto& cur = report.rows[k];
    const double allowance = se_multiplier * std::hypot(prev.discrepancy_se, cur.discrepancy_se);
    if (cur.discrepancy > prev.discrepancy + allowance) {
      verdict.passed = false;
      os << "discrepancy increases at width " << cur.width << " (" << fmt(prev.discrepancy) << " -> "
         << fmt(cur.discrepancy) << "); ";
    }
  }
  const auto& last = report.rows.back();
  double worst = 0.0;
  for (std::size_t k = 0; k < last.means.size(); ++k) {
    const double pooled = std::hypot(last.standard_errors[k], report.reference.standard_errors[k]);
    const double z = pooled > 0.0 ? std::abs(last.means[k] - report.reference.means[k]) / pooled : 0.0;
    worst = std::max(worst, z);
    if (z > final_multiplier) {
      verdict.passed = false;
      os << "functional " << k << " differs by " << fmt(z) << " pooled se; ";
    }
  }
  os << "largest final deviation " << fmt(worst) << " pooled se";
  verdict.detail = os.str();
  return verdict;
}

}  // namespace stablefield

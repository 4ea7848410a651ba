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

#include "stablefield/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "stablefield/discrete_convolution.hpp"
#include "stablefield/parallel.hpp"

namespace stablefield {

namespace {

constexpr std::uint64_t kReferenceStream = 0x52454645ULL;
constexpr std::uint64_t kTestStream = 0x54455354ULL;
constexpr std::uint64_t kQuasinormStream = 0x514e524dULL;
constexpr std::size_t kDenseDistanceLimit = 12000;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// Pairwise distances of the pooled sample, dense when small enough.
class PooledDistances {
 public:
  PooledDistances(const PointSet& a, const PointSet& b) : dim_{a.dim()}, n_{a.size() + b.size()} {
    coords_.reserve(n_ * dim_);
    coords_.insert(coords_.end(), a.coords().begin(), a.coords().end());
    coords_.insert(coords_.end(), b.coords().begin(), b.coords().end());
    if (n_ <= kDenseDistanceLimit) {
      dense_.resize(n_ * n_);
      parallel_for(n_, [&](std::size_t i) {
        for (std::size_t j = 0; j < n_; ++j) {
          dense_[i * n_ + j] = static_cast<float>(compute(i, j));
        }
      });
    }
  }

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return dense_.empty() ? compute(i, j) : static_cast<double>(dense_[i * n_ + j]);
  }

  // sum_{i in I} sum_{j in J} w_i w_j D_ij over sparse index/weight lists.
  double bilinear(const std::vector<std::size_t>& I, const std::vector<double>& wi, const std::vector<std::size_t>& J,
                  const std::vector<double>& wj) const noexcept {
    double total = 0.0;
    for (std::size_t a = 0; a < I.size(); ++a) {
      double row = 0.0;
      if (!dense_.empty()) {
        const float* base = dense_.data() + I[a] * n_;
        for (std::size_t b = 0; b < J.size(); ++b) {
          row += wj[b] * static_cast<double>(base[J[b]]);
        }
      } else {
        for (std::size_t b = 0; b < J.size(); ++b) {
          row += wj[b] * compute(I[a], J[b]);
        }
      }
      total += wi[a] * row;
    }
    return total;
  }

 private:
  double compute(std::size_t i, std::size_t j) const noexcept {
    const double* x = coords_.data() + i * dim_;
    const double* y = coords_.data() + j * dim_;
    double sum = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double diff = x[k] - y[k];
      sum += diff * diff;
    }
    return std::sqrt(sum);
  }

  std::size_t dim_;
  std::size_t n_;
  std::vector<double> coords_;
  std::vector<float> dense_;
};

double energy_from_sums(double s_ab, double s_aa, double s_bb, double na, double nb) noexcept {
  return 2.0 * s_ab / (na * nb) - s_aa / (na * na) - s_bb / (nb * nb);
}

void check_samples(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("energy distance needs two non-empty samples");
  }
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("energy distance samples differ in dimension");
  }
}

// Bootstrap counts of `n` draws from [offset, offset + n), as sparse index/count lists.
void bootstrap_counts(RngStream& rng, std::size_t n, std::size_t offset, std::vector<std::size_t>& index,
                      std::vector<double>& count) {
  std::vector<std::uint32_t> counts(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    ++counts[rng.below(n)];
  }
  index.clear();
  count.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (counts[i] > 0) {
      index.push_back(offset + i);
      count.push_back(static_cast<double>(counts[i]));
    }
  }
}

Point unit_direction(const std::optional<Point>& direction, std::size_t d) {
  Point e(d, 0.0);
  if (!direction) {
    e[0] = 1.0;
    return e;
  }
  if (direction->size() != d) {
    throw std::invalid_argument("modulus direction has the wrong dimension");
  }
  double norm = 0.0;
  for (const double c : *direction) {
    norm += c * c;
  }
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    throw std::invalid_argument("modulus direction must be non-zero");
  }
  for (std::size_t k = 0; k < d; ++k) {
    e[k] = (*direction)[k] / norm;
  }
  return e;
}

void require_network_p(const NetworkConfig& network, double p) {
  if (!(p > 0.0 && p < network.alpha)) {
    throw std::invalid_argument("moment exponent p = " + fmt(p) + " must lie in (0, alpha = " + fmt(network.alpha) +
                                "): higher moments of stable fields are infinite");
  }
}

}  // namespace

FieldSampler network_sampler(const NetworkConfig& config) {
  config.validate();
  return [config](std::size_t width, const RngStream& stream) -> std::unique_ptr<ScalarField> {
    return std::make_unique<NetworkField>(sample_network(config.with_width(width), stream));
  };
}

FieldSampler constant_sampler(std::size_t dim, double value) {
  return [dim, value](std::size_t, const RngStream&) -> std::unique_ptr<ScalarField> {
    return std::make_unique<FunctionField>(dim, [value](std::span<const double>) { return value; });
  };
}

double energy_distance(const PointSet& a, const PointSet& b) {
  check_samples(a, b);
  const auto sum_pairs = [](const PointSet& x, const PointSet& y) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < y.size(); ++j) {
        total += distance(x[i], y[j]);
      }
    }
    return total;
  };
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const double value = energy_from_sums(sum_pairs(a, b), sum_pairs(a, a), sum_pairs(b, b), na, nb);
  return std::max(0.0, value);
}

EnergyDistanceTest energy_distance_test(const PointSet& a, const PointSet& b, std::size_t bootstrap,
                                        std::size_t permutations, const RngStream& rng) {
  check_samples(a, b);
  const PooledDistances dist{a, b};
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;
  const auto dna = static_cast<double>(na);
  const auto dnb = static_cast<double>(nb);

  std::vector<double> row_sum(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += dist(i, j);
    }
    row_sum[i] = s;
  });
  const double grand = std::accumulate(row_sum.begin(), row_sum.end(), 0.0);

  std::vector<std::size_t> index_a(na);
  std::vector<std::size_t> index_b(nb);
  std::iota(index_a.begin(), index_a.end(), 0);
  std::iota(index_b.begin(), index_b.end(), na);
  const std::vector<double> ones_a(na, 1.0);
  const double s_aa = dist.bilinear(index_a, ones_a, index_a, ones_a);
  double row_a = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    row_a += row_sum[i];
  }
  const double s_ab = row_a - s_aa;
  const double s_bb = grand - 2.0 * row_a + s_aa;

  EnergyDistanceTest result;
  result.size_a = na;
  result.size_b = nb;
  result.statistic = std::max(0.0, energy_from_sums(s_ab, s_aa, s_bb, dna, dnb));

  if (bootstrap > 1) {
    std::vector<double> stats(bootstrap);
    parallel_for(bootstrap, [&](std::size_t r) {
      RngStream stream = rng.substream(r);
      std::vector<std::size_t> ia;
      std::vector<std::size_t> ib;
      std::vector<double> ca;
      std::vector<double> cb;
      bootstrap_counts(stream, na, 0, ia, ca);
      bootstrap_counts(stream, nb, na, ib, cb);
      const double aa = dist.bilinear(ia, ca, ia, ca);
      const double bb = dist.bilinear(ib, cb, ib, cb);
      const double ab = dist.bilinear(ia, ca, ib, cb);
      stats[r] = energy_from_sums(ab, aa, bb, dna, dnb);
    });
    RunningMoments m;
    for (const double s : stats) {
      m.add(s);
    }
    result.bootstrap_se = std::sqrt(m.variance());
  }

  if (permutations > 0) {
    std::vector<double> stats(permutations);
    const RngStream perm_rng = rng.substream(0x5045524dULL);
    parallel_for(permutations, [&](std::size_t r) {
      RngStream stream = perm_rng.substream(r);
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      for (std::size_t i = 0; i < na; ++i) {
        std::swap(order[i], order[i + stream.below(n - i)]);
      }
      order.resize(na);
      std::sort(order.begin(), order.end());
      const double aa = dist.bilinear(order, ones_a, order, ones_a);
      double ra = 0.0;
      for (const std::size_t i : order) {
        ra += row_sum[i];
      }
      stats[r] = energy_from_sums(ra - aa, aa, grand - 2.0 * ra + aa, dna, dnb);
    });
    RunningMoments m;
    for (const double s : stats) {
      m.add(s);
    }
    result.baseline = m.mean();
    result.baseline_se = m.standard_error();
  }
  return result;
}

std::vector<double> default_modulus_distances() { return logspace(std::ldexp(1.0, -10), std::ldexp(1.0, -3), 8); }

ModulusReport modulus_estimate(const ModulusConfig& config, const RngStream& rng) {
  config.network.validate();
  require_network_p(config.network, config.p);
  const std::size_t d = config.network.input_dim;
  if (config.base_point.size() != d) {
    throw std::invalid_argument("modulus base point has the wrong dimension");
  }
  if (config.distances.empty()) {
    throw std::invalid_argument("modulus estimate needs at least one distance");
  }
  for (const double delta : config.distances) {
    if (!(delta > 0.0 && delta <= 1.0)) {
      throw std::invalid_argument("modulus distances must lie in (0, 1], got " + fmt(delta));
    }
  }
  if (config.reps < 2) {
    throw std::invalid_argument("modulus estimate needs at least two replicates");
  }
  const Point e = unit_direction(config.direction, d);
  std::vector<double> distances = config.distances;
  std::sort(distances.begin(), distances.end());
  const std::size_t k_count = distances.size();

  PointSet points{d};
  points.push_back(config.base_point);
  for (const double delta : distances) {
    Point y = config.base_point;
    for (std::size_t k = 0; k < d; ++k) {
      y[k] += delta * e[k];
    }
    points.push_back(y);
  }

  std::vector<double> moments(config.reps * k_count);
  parallel_for(config.reps, [&](std::size_t r) {
    const NetworkRealization net = sample_network(config.network, rng.substream(r));
    const std::vector<double> values = net.evaluate_points(points);
    for (std::size_t k = 0; k < k_count; ++k) {
      moments[r * k_count + k] = std::pow(std::abs(values[k + 1] - values[0]), config.p);
    }
  });

  ModulusReport report;
  report.p = config.p;
  report.widths = config.network.widths;
  report.reps = config.reps;
  std::vector<double> log_delta;
  std::vector<double> log_mean;
  std::vector<double> column(config.reps);
  for (std::size_t k = 0; k < k_count; ++k) {
    RunningMoments m;
    for (std::size_t r = 0; r < config.reps; ++r) {
      column[r] = moments[r * k_count + k];
      m.add(column[r]);
    }
    report.rows.push_back({distances[k], m.mean(), m.standard_error(), median(column)});
    if (m.mean() > 0.0) {
      log_delta.push_back(std::log(distances[k]));
      log_mean.push_back(std::log(m.mean()));
    }
  }
  if (log_delta.size() >= 3) {
    report.fit = fit_line(log_delta, log_mean);
  }
  return report;
}

EnergyScanReport energy_bound_scan(const EnergyScanConfig& config, const RngStream& rng) {
  config.network.validate();
  const std::size_t d = config.domain.dimension();
  if (config.network.input_dim != d) {
    throw std::invalid_argument("network input dimension does not match the domain");
  }
  const ValidationReport checks = validate_params(d, config.network.activation.holder_exponent(),
                                                  config.network.alpha, config.s, config.p);
  if (!checks.all_passed()) {
    throw std::invalid_argument("energy scan parameters violate: " + checks.failures());
  }
  if (config.widths.empty() || config.reps < 2) {
    throw std::invalid_argument("energy scan needs widths and at least two replicates");
  }
  const SobolevParams params{config.s, config.p, d};
  const bool use_grid = !config.mc.has_value();
  if (use_grid && d != 1) {
    throw std::invalid_argument("grid quasinorm is only available in d = 1; configure Monte Carlo");
  }

  std::optional<GridSeminormKernel> kernel;
  PointSet grid;
  if (use_grid) {
    kernel.emplace(config.domain, config.grid_points, params);
    grid = midpoint_grid(config.domain, config.grid_points);
  }
  const std::size_t w_count = config.widths.size();
  std::vector<double> energy(config.reps * w_count);
  const FieldSampler sampler = network_sampler(config.network);
  parallel_for(config.reps, [&](std::size_t r) {
    const RngStream stream = rng.substream(r);
    for (std::size_t w = 0; w < w_count; ++w) {
      const std::unique_ptr<ScalarField> field = sampler(config.widths[w], stream);
      double total = 0.0;
      if (use_grid) {
        total = (*kernel)(field->evaluate(grid)).total;
      } else {
        total = quasinorm(*field, config.domain, params, *config.mc, stream.substream(kQuasinormStream)).total;
      }
      energy[r * w_count + w] = std::pow(total, config.p);
    }
  });

  EnergyScanReport report;
  std::vector<double> log_width;
  std::vector<double> log_mean;
  std::vector<double> raw_mean;
  std::vector<double> column(config.reps);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t w = 0; w < w_count; ++w) {
    RunningMoments m;
    for (std::size_t r = 0; r < config.reps; ++r) {
      column[r] = energy[r * w_count + w];
      m.add(column[r]);
    }
    report.rows.push_back({config.widths[w], m.mean(), m.standard_error(), median(column)});
    lo = std::min(lo, m.mean());
    hi = std::max(hi, m.mean());
    log_width.push_back(std::log(static_cast<double>(config.widths[w])));
    raw_mean.push_back(m.mean());
    log_mean.push_back(m.mean() > 0.0 ? std::log(m.mean()) : 0.0);
  }
  report.max_min_ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (w_count >= 3) {
    report.log_fit = fit_line(log_width, log_mean);
    report.raw_fit = fit_line(log_width, raw_mean);
  }
  return report;
}

ConvergenceReport convergence_study(const FieldSampler& sampler, const FeatureMap& features,
                                    const ConvergenceStudyConfig& config, const RngStream& rng) {
  if (config.widths.empty() || config.reps < 2) {
    throw std::invalid_argument("convergence study needs widths and at least two replicates");
  }
  for (std::size_t w = 0; w < config.widths.size(); ++w) {
    if (config.widths[w] == 0 || (w > 0 && config.widths[w] <= config.widths[w - 1])) {
      throw std::invalid_argument("convergence widths must be positive and strictly increasing");
    }
  }
  if (config.reference_width < config.widths.back()) {
    throw std::invalid_argument("reference width must be at least the largest study width");
  }
  const std::size_t w_count = config.widths.size();
  const std::size_t reps = config.reps;

  // samples[w] holds reps feature vectors; samples[w_count] is the reference.
  std::vector<std::vector<std::vector<double>>> samples(w_count + 1, std::vector<std::vector<double>>(reps));
  const RngStream reference_rng = rng.substream(kReferenceStream);
  parallel_for(reps, [&](std::size_t r) {
    const RngStream stream = rng.substream(r);
    for (std::size_t w = 0; w < w_count; ++w) {
      samples[w][r] = features(*sampler(config.widths[w], stream));
    }
    samples[w_count][r] = features(*sampler(config.reference_width, reference_rng.substream(r)));
  });

  const auto to_points = [](const std::vector<std::vector<double>>& rows) {
    const std::size_t dim = rows.front().size();
    PointSet points{dim};
    points.reserve(rows.size());
    for (const auto& row : rows) {
      if (row.size() != dim) {
        throw std::runtime_error("feature map returned vectors of varying length");
      }
      for (const double v : row) {
        if (!std::isfinite(v)) {
          throw std::runtime_error("feature map returned a non-finite value");
        }
      }
      points.push_back(row);
    }
    return points;
  };

  const PointSet reference = to_points(samples[w_count]);
  ConvergenceReport report;
  report.reference_width = config.reference_width;
  report.reps = reps;
  const RngStream test_rng = rng.substream(kTestStream);
  for (std::size_t w = 0; w < w_count; ++w) {
    const PointSet sample = to_points(samples[w]);
    const EnergyDistanceTest test =
        energy_distance_test(sample, reference, config.bootstrap, config.permutations, test_rng.substream(w));
    report.rows.push_back({config.widths[w], test.statistic, test.bootstrap_se, test.baseline, test.baseline_se});
  }
  return report;
}

ConvergenceReport fdd_convergence_study(const FieldSampler& sampler, const PointSet& points,
                                        const ConvergenceStudyConfig& config, const RngStream& rng) {
  if (points.empty()) {
    throw std::invalid_argument("finite-dimensional study needs at least one point");
  }
  ConvergenceReport report = convergence_study(
      sampler, [&points](const ScalarField& f) { return f.evaluate(points); }, config, rng);
  std::ostringstream os;
  os << "point evaluations at";
  for (std::size_t i = 0; i < points.size(); ++i) {
    os << " (";
    for (std::size_t k = 0; k < points.dim(); ++k) {
      os << (k ? "," : "") << points[i][k];
    }
    os << ")";
  }
  report.features = os.str();
  return report;
}

ConvergenceReport local_avg_convergence_study(const FieldSampler& sampler, const std::vector<Ball>& balls,
                                              const Domain& domain, const QuadratureConfig& quadrature,
                                              const ConvergenceStudyConfig& config, const RngStream& rng) {
  if (balls.empty()) {
    throw std::invalid_argument("local-average study needs at least one ball");
  }
  if (quadrature.kind != QuadratureConfig::Kind::Grid) {
    throw std::invalid_argument("local-average study uses grid averaging rules");
  }
  PointSet all{domain.dimension()};
  std::vector<std::size_t> offsets{0};
  std::vector<double> weights;
  std::ostringstream os;
  os << "local averages over";
  for (const Ball& ball : balls) {
    if (!domain.contains(ball.center)) {
      throw std::invalid_argument("ball centres must lie inside the domain");
    }
    const QuadratureRule rule = averaging_rule(ball, domain, quadrature);
    for (std::size_t j = 0; j < rule.points.size(); ++j) {
      all.push_back(rule.points[j]);
      weights.push_back(rule.weights[j]);
    }
    offsets.push_back(all.size());
    os << " B((";
    for (std::size_t k = 0; k < ball.center.size(); ++k) {
      os << (k ? "," : "") << ball.center[k];
    }
    os << ")," << ball.radius << ")";
  }
  const FeatureMap averages = [&](const ScalarField& f) {
    const std::vector<double> values = f.evaluate(all);
    std::vector<double> out(offsets.size() - 1);
    for (std::size_t b = 0; b + 1 < offsets.size(); ++b) {
      double sum = 0.0;
      for (std::size_t j = offsets[b]; j < offsets[b + 1]; ++j) {
        sum += weights[j] * values[j];
      }
      out[b] = sum;
    }
    return out;
  };
  ConvergenceReport report = convergence_study(sampler, averages, config, rng);
  report.features = os.str();
  return report;
}

Verdict convergence_verdict(const ConvergenceReport& report, double se_multiplier, double baseline_factor) {
  Verdict verdict{true, ""};
  std::ostringstream os;
  if (report.rows.empty()) {
    return {false, "empty report"};
  }
  for (std::size_t k = 1; k < report.rows.size(); ++k) {
    const ConvergenceRow& prev = report.rows[k - 1];
    const ConvergenceRow& cur = report.rows[k];
    const double allowance = se_multiplier * std::hypot(prev.standard_error, cur.standard_error);
    if (cur.statistic > prev.statistic + allowance) {
      verdict.passed = false;
      os << "increase at width " << cur.width << " (" << fmt(prev.statistic) << " -> " << fmt(cur.statistic)
         << ", allowance " << fmt(allowance) << "); ";
    }
  }
  const ConvergenceRow& last = report.rows.back();
  if (last.statistic > baseline_factor * last.baseline) {
    verdict.passed = false;
    os << "final " << fmt(last.statistic) << " exceeds " << fmt(baseline_factor) << " x baseline "
       << fmt(last.baseline) << "; ";
  } else {
    os << "final " << fmt(last.statistic) << " <= " << fmt(baseline_factor) << " x baseline " << fmt(last.baseline);
  }
  verdict.detail = os.str();
  return verdict;
}

LebesgueReport lebesgue_point_study(const FieldSampler& sampler, std::size_t width, const LebesgueConfig& config,
                                    const RngStream& rng) {
  const std::size_t d = config.domain.dimension();
  if (config.x.size() != d || !config.domain.contains(config.x)) {
    throw std::invalid_argument("Lebesgue point must lie inside the domain");
  }
  if (!(config.p > 0.0)) {
    throw std::invalid_argument("Lebesgue study exponent p must be positive");
  }
  if (config.radii.empty() || config.reps < 2) {
    throw std::invalid_argument("Lebesgue study needs radii and at least two replicates");
  }
  std::vector<double> radii = config.radii;
  std::sort(radii.begin(), radii.end(), std::greater<>());

  PointSet all{d};
  all.push_back(config.x);
  std::vector<std::size_t> offsets{1};
  std::vector<double> weights;
  for (const double r : radii) {
    const QuadratureRule rule = averaging_rule(Ball{config.x, r}, config.domain, config.quadrature);
    for (std::size_t j = 0; j < rule.points.size(); ++j) {
      all.push_back(rule.points[j]);
      weights.push_back(rule.weights[j]);
    }
    offsets.push_back(all.size());
  }
  const std::size_t k_count = radii.size();
  std::vector<double> results(config.reps * k_count);
  parallel_for(config.reps, [&](std::size_t rep) {
    const std::unique_ptr<ScalarField> field = sampler(width, rng.substream(rep));
    const std::vector<double> values = field->evaluate(all);
    for (std::size_t k = 0; k < k_count; ++k) {
      double avg = 0.0;
      for (std::size_t j = offsets[k]; j < offsets[k + 1]; ++j) {
        avg += weights[j - 1] * std::abs(values[j] - values[0]);
      }
      results[rep * k_count + k] = std::pow(avg, config.p);
    }
  });

  LebesgueReport report;
  report.width = width;
  std::vector<double> column(config.reps);
  for (std::size_t k = 0; k < k_count; ++k) {
    RunningMoments m;
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      column[rep] = results[rep * k_count + k];
      m.add(column[rep]);
    }
    report.rows.push_back({radii[k], m.mean(), m.standard_error(), median(column)});
  }
  return report;
}

Verdict lebesgue_monotone_verdict(const LebesgueReport& report, double se_multiplier) {
  Verdict verdict{true, ""};
  std::ostringstream os;
  for (std::size_t k = 1; k < report.rows.size(); ++k) {
    const LebesgueRow& larger = report.rows[k - 1];
    const LebesgueRow& smaller = report.rows[k];
    const double allowance = se_multiplier * std::hypot(larger.standard_error, smaller.standard_error);
    if (smaller.mean > larger.mean + allowance) {
      verdict.passed = false;
      os << "increase at r = " << fmt(smaller.radius) << " (" << fmt(larger.mean) << " -> " << fmt(smaller.mean)
         << "); ";
    }
  }
  if (verdict.passed) {
    os << "width " << report.width << ": non-increasing over " << report.rows.size() << " radii";
  }
  verdict.detail = os.str();
  return verdict;
}

Verdict lebesgue_uniformity_verdict(const LebesgueReport& a, const LebesgueReport& b, double factor) {
  if (a.rows.size() != b.rows.size()) {
    return {false, "reports use different radii"};
  }
  Verdict verdict{true, ""};
  std::ostringstream os;
  double worst = 1.0;
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    const double lo = std::min(a.rows[k].mean, b.rows[k].mean);
    const double hi = std::max(a.rows[k].mean, b.rows[k].mean);
    const double ratio = lo > 0.0 ? hi / lo : (hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    worst = std::max(worst, ratio);
    if (ratio > factor) {
      verdict.passed = false;
      os << "ratio " << fmt(ratio) << " at r = " << fmt(a.rows[k].radius) << "; ";
    }
  }
  os << "max ratio " << fmt(worst);
  verdict.detail = os.str();
  return verdict;
}

namespace {

struct TnWorkspace {
  SobolevParams params;
  GridSeminormKernel kernel;
  PointSet grid;
  std::vector<TnOperator> operators;
};

TnWorkspace make_tn_workspace(const TnStudyConfig& config) {
  if (config.domain.dimension() != 1) {
    throw std::invalid_argument("discrete convolution study is implemented for d = 1");
  }
  if (config.levels.empty()) {
    throw std::invalid_argument("discrete convolution study needs at least one level");
  }
  const SobolevParams params{config.s, config.p, 1};
  TnWorkspace ws{params, GridSeminormKernel{config.domain, config.grid_points, params},
                 midpoint_grid(config.domain, config.grid_points), {}};
  for (const int level : config.levels) {
    ws.operators.emplace_back(config.domain, level, config.quadrature);
  }
  return ws;
}

std::vector<double> tn_distances_with(const ScalarField& field, const TnWorkspace& ws) {
  const std::vector<double> values = field.evaluate(ws.grid);
  std::vector<double> out;
  std::vector<double> diff(values.size());
  for (const TnOperator& op : ws.operators) {
    const TnField tn = op.apply(field);
    const std::vector<double> approx = tn.evaluate(ws.grid);
    for (std::size_t i = 0; i < values.size(); ++i) {
      diff[i] = approx[i] - values[i];
    }
    out.push_back(std::pow(ws.kernel(diff).total, ws.params.metric_exponent()));
  }
  return out;
}

}  // namespace

std::vector<double> tn_distances(const ScalarField& field, const TnStudyConfig& config) {
  return tn_distances_with(field, make_tn_workspace(config));
}

TnReport tn_convergence_study(const FieldSampler& sampler, std::size_t width, const TnStudyConfig& config,
                              const RngStream& rng) {
  if (config.reps == 0) {
    throw std::invalid_argument("discrete convolution study needs at least one replicate");
  }
  const TnWorkspace ws = make_tn_workspace(config);
  const std::size_t l_count = config.levels.size();
  std::vector<double> results(config.reps * l_count);
  parallel_for(config.reps, [&](std::size_t rep) {
    const std::unique_ptr<ScalarField> field = sampler(width, rng.substream(rep));
    const std::vector<double> row = tn_distances_with(*field, ws);
    std::copy(row.begin(), row.end(), results.begin() + static_cast<std::ptrdiff_t>(rep * l_count));
  });
  TnReport report;
  report.width = width;
  std::vector<double> column(config.reps);
  for (std::size_t l = 0; l < l_count; ++l) {
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      column[rep] = results[rep * l_count + l];
    }
    report.rows.push_back({config.levels[l], median(column), mean(column), quantile(column, 0.25),
                           quantile(column, 0.75)});
  }
  return report;
}

Verdict tn_verdict(const TnReport& report) {
  Verdict verdict{true, ""};
  std::ostringstream os;
  for (std::size_t k = 1; k < report.rows.size(); ++k) {
    if (!(report.rows[k].median < report.rows[k - 1].median)) {
      verdict.passed = false;
      os << "median not decreasing at level " << report.rows[k].level << "; ";
    }
  }
  os << "medians";
  for (const TnRow& row : report.rows) {
    os << ' ' << fmt(row.median);
  }
  verdict.detail = os.str();
  return verdict;
}

}  // namespace stablefield

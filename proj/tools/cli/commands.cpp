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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "stablefield/bayes.hpp"
#include "stablefield/field_io.hpp"
#include "stablefield/network.hpp"
#include "stablefield/report_io.hpp"
#include "stablefield/statistics.hpp"

namespace stablefield::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr NetworkScales kFigureScales{1.0, 0.0, 5.0, 2.0};
constexpr double kEssWarning = 50.0;

NetworkConfig network_defaults(double alpha, std::size_t width,
                               ActivationSpec activation = ActivationSpec::clipped_linear()) {
  NetworkConfig c;
  c.alpha = alpha;
  c.widths = {width};
  c.scales = kFigureScales;
  c.activation = activation;
  return c;
}

NetworkConfig read_network(ConfigNode& node, const NetworkConfig& defaults, bool read_alpha = true) {
  return node.object("network", [&](ConfigNode& n) { return parse_network(n, defaults, read_alpha); });
}

Domain read_domain(ConfigNode& node) {
  return node.object("domain", [](ConfigNode& n) { return parse_domain(n); });
}

QuadratureConfig read_quadrature(ConfigNode& node) {
  return node.object("quadrature", [](ConfigNode& n) { return parse_quadrature(n); });
}

json parsed(const std::string& text) { return json::parse(text); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

double positive(ConfigNode& node, const std::string& key, double fallback) {
  const double v = node.get<double>(key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(node.where(key) + ": must be positive and finite");
  }
  return v;
}

std::size_t count(ConfigNode& node, const std::string& key, std::size_t fallback, std::size_t minimum = 1) {
  const std::size_t v = node.get<std::size_t>(key, fallback);
  if (v < minimum) {
    throw ConfigError(node.where(key) + ": must be at least " + std::to_string(minimum));
  }
  return v;
}

void require_interval(const Domain& domain, const NetworkConfig& network, const std::string& what) {
  if (domain.dimension() != network.input_dim) {
    throw ConfigError(what + ": domain dimension " + std::to_string(domain.dimension()) +
                      " differs from the network input dimension " + std::to_string(network.input_dim));
  }
}

// sample-field ---------------------------------------------------------------------------------

PointSet disk_grid(std::size_t side) {
  PointSet grid{2};
  const PointSet axis = PointSet::linspace(-1.0, 1.0, side);
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      const double x = axis[j][0];
      const double y = axis[i][0];
      if (x * x + y * y <= 1.0) {
        grid.push_back(std::vector<double>{x, y});
      }
    }
  }
  return grid;
}

Runner sample_field(ConfigNode& node, const RunContext& ctx) {
  const std::vector<double> alphas = node.get<std::vector<double>>("alphas", {0.5, 1.0, 1.5, 1.9});
  const std::size_t dim = node.get<std::size_t>("dimension", 1);
  if (dim != 1 && dim != 2) {
    throw ConfigError("dimension: sample-field draws fields on [-1, 1] or the unit disk (d = 1 or 2), got " +
                      std::to_string(dim));
  }
  NetworkConfig defaults = network_defaults(1.0, 100000);
  defaults.input_dim = dim;
  NetworkConfig network = read_network(node, defaults, false);
  if (network.input_dim != dim) {
    throw ConfigError("network.input_dim must equal dimension");
  }
  const std::size_t grid_points = count(node, dim == 1 ? "grid_points" : "grid_side", dim == 1 ? 2001 : 201, 2);
  const std::size_t replicates = count(node, "replicates", 1);
  if (alphas.empty()) {
    throw ConfigError("alphas: at least one value is required");
  }
  for (const double a : alphas) {
    NetworkConfig trial = network;
    trial.alpha = a;
    try {
      trial.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string{"alphas: "} + e.what());
    }
  }
  return [=] {
    const PointSet grid = dim == 1 ? PointSet::linspace(-1.0, 1.0, grid_points) : disk_grid(grid_points);
    const RngStream master{ctx.seed, 0};
    CommandResult result;
    json files = json::array();
    bool finite = true;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      NetworkConfig config = network;
      config.alpha = alphas[i];
      for (std::size_t r = 0; r < replicates; ++r) {
        FieldSample sample = evaluate_grid(sample_network(config, master.substream(i).substream(r)), grid);
        sample.domain = dim == 1 ? Domain::interval(-1.0, 1.0) : Domain::ball({0.0, 0.0}, 1.0);
        for (const double v : sample.values) {
          finite = finite && std::isfinite(v);
        }
        const std::string name = "field_alpha" + format_double(alphas[i]) + "_rep" + std::to_string(r) + ".csv";
        write_field_csv(ctx.out / name, sample);
        files.push_back({{"file", name}, {"alpha", alphas[i]}, {"replicate", r}, {"rows", sample.size()}});
      }
    }
    result.results = {{"files", files}, {"grid_points", grid.size()}};
    result.check = {finite, finite ? "all field values finite" : "non-finite field values"};
    return result;
  };
}

// validate-params ------------------------------------------------------------------------------

Runner validate_params_cmd(ConfigNode& node, const RunContext& ctx) {
  const std::size_t d = node.get<std::size_t>("dimension", 1);
  const double lambda = node.get<double>("lambda", 1.0);
  const double alpha = node.require<double>("alpha");
  const double s = node.require<double>("s");
  const double p = node.require<double>("p");
  std::optional<EmbeddingTarget> target;
  if (node.has("target")) {
    target = node.object("target", [](ConfigNode& t) {
      return EmbeddingTarget{t.require<double>("s"), t.require<double>("p")};
    });
  }
  return [=] {
    const ValidationReport report = validate_params(d, lambda, alpha, s, p, target);
    CsvTable table{{"check", "passed", "inequality", "detail"}};
    for (const ValidationCheck& c : report.checks) {
      table.row({c.name, c.passed ? "1" : "0", c.inequality, c.detail});
    }
    table.write(ctx.out / "validation.csv");
    CommandResult result;
    result.results = parsed(validation_json(report));
    // With a target exactly one embedding check can hold; the pair passes when either does.
    bool ok = true;
    std::vector<std::string> failed;
    for (const ValidationCheck& c : report.checks) {
      const bool embedding = c.name.rfind("embedding_", 0) == 0;
      if (!c.passed && !embedding) {
        ok = false;
        failed.push_back(c.name + " (" + c.inequality + "; " + c.detail + ")");
      }
    }
    if (target) {
      const bool cont = report.find("embedding_continuous")->passed;
      const bool comp = report.find("embedding_compact")->passed;
      result.results["embedding"] = cont ? "continuous" : (comp ? "compact" : "none");
      if (!cont && !comp) {
        ok = false;
        failed.push_back("embedding (" + report.find("embedding_continuous")->detail + ")");
      }
    }
    std::string detail;
    for (const std::string& f : failed) {
      detail += (detail.empty() ? "violated: " : ", ") + f;
    }
    result.invalid = !ok;
    result.check = {ok, ok ? "all inequalities hold" : detail};
    return result;
  };
}

// modulus --------------------------------------------------------------------------------------

Runner modulus(ConfigNode& node, const RunContext& ctx) {
  ModulusConfig config;
  config.network = read_network(node, network_defaults(1.5, 4096));
  config.p = positive(node, "p", 0.75);
  config.base_point = node.get<Point>("base_point", Point(config.network.input_dim, 0.3));
  config.direction = node.optional<Point>("direction");
  config.distances = node.get<std::vector<double>>("distances", default_modulus_distances());
  config.reps = count(node, "reps", 2000, 2);
  const double tolerance = node.object("check", [](ConfigNode& c) { return c.get<double>("slope_tolerance", 0.1); });
  if (config.base_point.size() != config.network.input_dim) {
    throw ConfigError("base_point: dimension differs from network.input_dim");
  }
  if (!(config.p < config.network.alpha)) {
    throw ConfigError("p: must be below network.alpha");
  }
  return [=] {
    const ModulusReport report = modulus_estimate(config, RngStream{ctx.seed, 0});
    modulus_table(report).write(ctx.out / "modulus.csv");
    CommandResult result;
    result.results = parsed(modulus_json(report));
    const double target = config.network.activation.holder_exponent() * config.p;
    result.results["target_slope"] = target;
    const bool ok = std::abs(report.fit.slope - target) <= tolerance;
    result.check = {ok, "slope " + fmt(report.fit.slope) + ", target " + fmt(target) + " +- " + fmt(tolerance)};
    return result;
  };
}

// norm-scan ------------------------------------------------------------------------------------

Runner norm_scan(ConfigNode& node, const RunContext& ctx) {
  EnergyScanConfig config;
  config.network = read_network(node, network_defaults(1.2, 1));
  config.domain = read_domain(node);
  config.s = node.get<double>("s", 0.5);
  config.p = node.get<double>("p", 0.8);
  config.widths = parse_widths(node, "widths", {16, 64, 256, 1024, 4096, 16384});
  config.reps = count(node, "reps", 200, 2);
  config.grid_points = count(node, "grid_points", 512, 2);
  if (node.has("monte_carlo")) {
    config.mc = node.object("monte_carlo", [](ConfigNode& m) {
      MonteCarloConfig mc;
      mc.points = m.get<std::size_t>("points", mc.points);
      mc.pairs = m.get<std::size_t>("pairs", mc.pairs);
      mc.chunks = m.get<std::size_t>("chunks", mc.chunks);
      mc.assumed_holder = m.optional<double>("assumed_holder");
      return mc;
    });
  }
  const bool record = node.get<bool>("record_quasinorm", false);
  require_interval(config.domain, config.network, "norm-scan");
  const ValidationReport gate = validate_params(config.network.input_dim,
                                                config.network.activation.holder_exponent(), config.network.alpha,
                                                config.s, config.p);
  if (!gate.all_passed()) {
    throw ConfigError("parameters violate: " + gate.failures());
  }
  return [=] {
    const RngStream rng{ctx.seed, 0};
    const EnergyScanReport report = energy_bound_scan(config, rng);
    energy_scan_table(report).write(ctx.out / "energy.csv");
    CommandResult result;
    result.results = parsed(energy_scan_json(report));
    if (record) {
      // Monte Carlo quasinorm of the first replicate at every width.
      const MonteCarloConfig mc = config.mc.value_or(MonteCarloConfig{20000, 200000, 16, 1.0});
      const SobolevParams params{config.s, config.p, config.domain.dimension()};
      json records = json::array();
      for (const std::size_t w : config.widths) {
        const NetworkField field{sample_network(config.network.with_width(w), rng.substream(0))};
        const RngStream q_rng = rng.substream(0x51554153ULL).substream(w);
        json rec = parsed(quasinorm_json(quasinorm(field, config.domain, params, mc, q_rng), params, ctx.seed));
        rec["width"] = w;
        records.push_back(rec);
      }
      result.results["quasinorm"] = records;
    }
    const bool ok = report.max_min_ratio < 2.0 && std::abs(report.log_fit.slope) < 0.05;
    result.check = {ok, "max/min " + fmt(report.max_min_ratio) + " (< 2), log slope " + fmt(report.log_fit.slope) +
                            " (|.| < 0.05)"};
    return result;
  };
}

// fdd, local-avg --------------------------------------------------------------------------------

ConvergenceStudyConfig read_study(ConfigNode& node) {
  ConvergenceStudyConfig c;
  c.widths = parse_widths(node, "widths", {64, 256, 1024, 4096});
  c.reference_width = count(node, "reference_width", 65536);
  c.reps = count(node, "reps", 4000, 2);
  c.bootstrap = count(node, "bootstrap", 200, 2);
  c.permutations = count(node, "permutations", 200, 1);
  if (c.reference_width < c.widths.back()) {
    throw ConfigError("reference_width: must be at least the largest width");
  }
  return c;
}

CommandResult convergence_result(const ConvergenceReport& report, const RunContext& ctx) {
  const Verdict verdict = convergence_verdict(report);
  convergence_table(report).write(ctx.out / "convergence.csv");
  CommandResult result;
  result.results = parsed(convergence_json(report, verdict));
  result.check = verdict;
  return result;
}

Runner fdd(ConfigNode& node, const RunContext& ctx) {
  const NetworkConfig network = read_network(node, network_defaults(1.2, 1));
  const std::vector<double> xs = node.get<std::vector<double>>("points", {-0.8, -0.4, 0.0, 0.4, 0.8});
  const ConvergenceStudyConfig study = read_study(node);
  if (network.input_dim != 1) {
    throw ConfigError("fdd: points are given on the line (network.input_dim = 1)");
  }
  if (xs.empty()) {
    throw ConfigError("points: at least one point is required");
  }
  return [=] {
    const auto report =
        fdd_convergence_study(network_sampler(network), PointSet::from_values(xs), study, RngStream{ctx.seed, 0});
    return convergence_result(report, ctx);
  };
}

Runner local_avg(ConfigNode& node, const RunContext& ctx) {
  const NetworkConfig network = read_network(node, network_defaults(1.2, 1));
  const Domain domain = read_domain(node);
  std::vector<Ball> balls = node.list<Ball>("balls", [](ConfigNode& b) { return parse_ball(b); });
  if (balls.empty()) {
    balls = {{{-0.5}, 0.2}, {{0.1}, 0.1}, {{0.6}, 0.3}};
  }
  const QuadratureConfig quadrature = read_quadrature(node);
  const ConvergenceStudyConfig study = read_study(node);
  require_interval(domain, network, "local-avg");
  for (const Ball& b : balls) {
    if (b.center.size() != domain.dimension() || !domain.contains(b.center)) {
      throw ConfigError("balls: every centre must lie in the domain");
    }
  }
  return [=] {
    const auto report =
        local_avg_convergence_study(network_sampler(network), balls, domain, quadrature, study, RngStream{ctx.seed, 0});
    return convergence_result(report, ctx);
  };
}

// tn-study -------------------------------------------------------------------------------------

Runner tn_study(ConfigNode& node, const RunContext& ctx) {
  const NetworkConfig network = read_network(node, network_defaults(1.2, 1));
  const std::size_t width = count(node, "width", 1024);
  TnStudyConfig config;
  config.domain = read_domain(node);
  config.s = node.get<double>("s", 0.4);
  config.p = node.get<double>("p", 0.8);
  config.levels = node.get<std::vector<int>>("levels", {3, 4, 5, 6, 7});
  config.reps = count(node, "reps", 20);
  config.grid_points = count(node, "grid_points", 2048, 2);
  config.quadrature = read_quadrature(node);
  if (config.domain.dimension() != 1 || network.input_dim != 1) {
    throw ConfigError("tn-study: the grid quasinorm needs d = 1");
  }
  try {
    SobolevParams{config.s, config.p, 1};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return [=] {
    const TnReport report = tn_convergence_study(network_sampler(network), width, config, RngStream{ctx.seed, 0});
    const Verdict verdict = tn_verdict(report);
    tn_table(report).write(ctx.out / "tn.csv");
    CommandResult result;
    result.results = parsed(tn_json(report, verdict));
    result.check = verdict;
    return result;
  };
}

// lebesgue -------------------------------------------------------------------------------------

Runner lebesgue(ConfigNode& node, const RunContext& ctx) {
  const NetworkConfig network = read_network(node, network_defaults(1.2, 1));
  const std::vector<std::size_t> widths = parse_widths(node, "widths", {256, 16384});
  LebesgueConfig config;
  config.domain = read_domain(node);
  config.x = node.get<Point>("x", {0.3});
  config.p = positive(node, "p", 0.8);
  std::vector<double> radii;
  for (int k = 3; k <= 9; ++k) {
    radii.push_back(std::ldexp(1.0, -k));
  }
  config.radii = node.get<std::vector<double>>("radii", radii);
  config.reps = count(node, "reps", 1000, 2);
  config.quadrature = read_quadrature(node);
  require_interval(config.domain, network, "lebesgue");
  if (config.x.size() != config.domain.dimension() || !config.domain.contains(config.x)) {
    throw ConfigError("x: must be a point of the domain");
  }
  return [=] {
    const RngStream rng{ctx.seed, 0};
    const FieldSampler sampler = network_sampler(network);
    std::vector<LebesgueReport> reports;
    CommandResult result;
    json rows = json::array();
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < widths.size(); ++i) {
      reports.push_back(lebesgue_point_study(sampler, widths[i], config, rng.substream(i + 1)));
      const Verdict v = lebesgue_monotone_verdict(reports.back());
      lebesgue_table(reports.back()).write(ctx.out / ("lebesgue_H" + std::to_string(widths[i]) + ".csv"));
      rows.push_back(parsed(lebesgue_json(reports.back(), v)));
      ok = ok && v.passed;
      detail += v.detail + "; ";
    }
    for (std::size_t i = 1; i < reports.size(); ++i) {
      const Verdict u = lebesgue_uniformity_verdict(reports[0], reports[i]);
      ok = ok && u.passed;
      detail += "cross-width " + u.detail + "; ";
    }
    result.results = {{"widths", rows}};
    result.check = {ok, detail};
    return result;
  };
}

// posterior ------------------------------------------------------------------------------------

struct ProblemSpec {
  PosteriorProblem problem;
  fs::path observations;
};

ProblemSpec read_problem(ConfigNode& node, const RunContext& ctx, const NetworkConfig& defaults) {
  ProblemSpec spec;
  spec.problem.network = read_network(node, defaults);
  spec.problem.domain = read_domain(node);
  spec.observations = node.require<std::string>("observations");
  if (spec.observations.is_relative()) {
    spec.observations = ctx.config_dir / spec.observations;
  }
  spec.problem.functionals = node.list<ForwardOp>("functionals", [](ConfigNode& f) { return parse_functional(f); });
  spec.problem.quadrature = read_quadrature(node);
  require_interval(spec.problem.domain, spec.problem.network, "posterior");
  const ObservationSet obs = load_observations(spec.observations);
  spec.problem.forward = obs.forward;
  spec.problem.noise = obs.noise;
  spec.problem.observation = obs.u;
  try {
    spec.problem.forward.compile(spec.problem.domain, spec.problem.quadrature);
    for (const ForwardOp& f : spec.problem.functionals) {
      f.compile(spec.problem.domain, spec.problem.quadrature);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

Runner posterior(ConfigNode& node, const RunContext& ctx) {
  const ProblemSpec spec = read_problem(node, ctx, network_defaults(1.0, 1));
  const std::size_t width = count(node, "width", spec.problem.network.widths.front());
  const std::size_t draws = count(node, "draws", 100000, 2);
  const bool dump = node.get<bool>("dump_ensemble", false);
  const bool oracle = node.get<bool>("oracle", false);
  const std::size_t oracle_nodes = count(node, "oracle_nodes", 192, 8);
  return [=] {
    const PosteriorEnsemble ensemble = posterior_importance(spec.problem, width, draws, RngStream{ctx.seed, 0});
    CommandResult result;
    result.results = parsed(posterior_json(ensemble));
    CsvTable table{{"index", "posterior_mean", "posterior_se", "prior_mean", "prior_se"}};
    for (const json& f : result.results["functionals"]) {
      table.row({std::to_string(f["index"].get<std::size_t>()), format_double(f["posterior_mean"].get<double>()),
                 format_double(f["posterior_se"].get<double>()), format_double(f["prior_mean"].get<double>()),
                 format_double(f["prior_se"].get<double>())});
    }
    table.write(ctx.out / "functionals.csv");
    if (dump) {
      ensemble_table(ensemble).write(ctx.out / "ensemble.csv");
    }
    if (ensemble.ess < kEssWarning) {
      const std::string warning = "effective sample size " + fmt(ensemble.ess) + " is below " + fmt(kEssWarning);
      result.results["warning"] = warning;
      std::cerr << "warning: " << warning << '\n';
    }
    if (oracle) {
      const OracleResult o = tiny_grid_oracle(spec.problem, oracle_nodes);
      result.results["oracle"] = parsed(oracle_json(o));
      bool ok = true;
      std::string detail;
      for (std::size_t k = 0; k < o.means.size(); ++k) {
        const Estimate is = posterior_expectation(ensemble, k);
        const double combined = std::hypot(is.standard_error, o.quadrature_errors[k]);
        const double gap = std::abs(is.value - o.means[k]);
        ok = ok && gap <= 2.0 * combined;
        detail += "functional " + std::to_string(k) + ": gap " + fmt(gap) + " vs 2 x " + fmt(combined) + "; ";
      }
      result.check = {ok, detail};
    } else {
      const bool ok = ensemble.ess >= kEssWarning;
      result.check = {ok, "ESS " + fmt(ensemble.ess) + " (>= " + fmt(kEssWarning) + ")"};
    }
    return result;
  };
}

Runner posterior_convergence(ConfigNode& node, const RunContext& ctx) {
  const ProblemSpec spec = read_problem(node, ctx, network_defaults(1.2, 1));
  const std::vector<std::size_t> widths = parse_widths(node, "widths", {64, 256, 1024, 4096});
  const std::size_t reference = count(node, "reference_width", 32768);
  const std::size_t draws = count(node, "draws", 20000, 2);
  if (reference < widths.back()) {
    throw ConfigError("reference_width: must be at least the largest width");
  }
  return [=] {
    const auto report = posterior_convergence_study(spec.problem, widths, reference, draws, RngStream{ctx.seed, 0});
    const Verdict verdict = posterior_convergence_verdict(report);
    posterior_convergence_table(report).write(ctx.out / "posterior_convergence.csv");
    CommandResult result;
    result.results = parsed(posterior_convergence_json(report, verdict));
    result.check = verdict;
    return result;
  };
}

}  // namespace

const std::vector<CommandInfo>& command_table() {
  static const std::vector<CommandInfo> table{
      {"sample-field", "Evaluate network fields on a grid for each alpha", sample_field},
      {"validate-params", "Check the smoothness and integrability parameters", validate_params_cmd},
      {"modulus", "Estimate the p-th moment modulus of continuity", modulus},
      {"norm-scan", "Scan the expected Sobolev energy across widths", norm_scan},
      {"fdd", "Energy-distance convergence of point values", fdd},
      {"local-avg", "Energy-distance convergence of local averages", local_avg},
      {"tn-study", "Convergence of the discrete convolution operator", tn_study},
      {"lebesgue", "Local oscillation around a point across radii and widths", lebesgue},
      {"posterior", "Importance-sampling posterior for one width", posterior},
      {"posterior-convergence", "Posterior functionals across widths against a reference", posterior_convergence},
  };
  return table;
}

}  // namespace stablefield::cli

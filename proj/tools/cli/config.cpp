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

#include "config.hpp"

#include <cmath>
#include <fstream>

namespace stablefield::cli {

using nlohmann::json;

ConfigNode::ConfigNode(json value, std::string path) : value_(std::move(value)), path_(std::move(path)) {
  if (!value_.is_object()) {
    throw ConfigError((path_.empty() ? std::string{"config"} : path_) + ": expected an object");
  }
}

void ConfigNode::finish() const {
  for (const auto& [key, unused] : value_.items()) {
    if (!seen_.contains(key)) {
      throw ConfigError(where(key) + ": unknown key");
    }
  }
}

namespace {

json read_json(const std::filesystem::path& path, const char* what) {
  std::ifstream in{path};
  if (!in) {
    throw ConfigError(std::string{"cannot open "} + what + " " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<Ball> parse_balls(ConfigNode& node, const std::string& key) {
  return node.list<Ball>(key, [](ConfigNode& b) { return parse_ball(b); }, true);
}

}  // namespace

ConfigNode load_config(const std::filesystem::path& path) {
  ConfigNode node{read_json(path, "config file"), ""};
  const int version = node.get<int>("schema_version", kSchemaVersion);
  if (version != kSchemaVersion) {
    throw ConfigError("schema_version " + std::to_string(version) + " is not supported (expected " +
                      std::to_string(kSchemaVersion) + ")");
  }
  return node;
}

NetworkConfig parse_network(ConfigNode& node, const NetworkConfig& defaults, bool read_alpha) {
  NetworkConfig c = defaults;
  if (read_alpha) {
    c.alpha = node.get<double>("alpha", defaults.alpha);
  }
  c.input_dim = node.get<std::size_t>("input_dim", defaults.input_dim);
  c.widths = node.get<std::vector<std::size_t>>("widths", defaults.widths);
  c.scales = node.object("scales", [&](ConfigNode& s) {
    NetworkScales out;
    out.sigma_v = s.get<double>("sigma_v", defaults.scales.sigma_v);
    out.sigma_b = s.get<double>("sigma_b", defaults.scales.sigma_b);
    out.sigma_u = s.get<double>("sigma_u", defaults.scales.sigma_u);
    out.sigma_a = s.get<double>("sigma_a", defaults.scales.sigma_a);
    return out;
  });
  c.activation = node.object("activation", [&](ConfigNode& a) {
    const std::string kind = a.get<std::string>("kind", defaults.activation.name());
    double lambda = 0.5;
    if (kind == "holder_power") {
      const bool same = defaults.activation.kind() == ActivationKind::HolderPower;
      lambda = a.get<double>("lambda", same ? defaults.activation.holder_exponent() : 0.5);
    }
    try {
      return parse_activation(kind, lambda);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(a.path() + ": " + e.what());
    }
  });
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(node.path() + ": " + e.what());
  }
  return c;
}

Domain parse_domain(ConfigNode& node) {
  const std::string kind = node.get<std::string>("kind", "interval");
  try {
    if (kind == "interval") {
      const double a = node.get<double>("a", -1.0);
      const double b = node.get<double>("b", 1.0);
      return Domain::interval(a, b);
    }
    if (kind == "ball") {
      const Point center = node.require<Point>("center");
      const double radius = node.get<double>("radius", 1.0);
      return Domain::ball(center, radius);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(node.path() + ": " + e.what());
  }
  throw ConfigError(node.where("kind") + ": expected \"interval\" or \"ball\", got \"" + kind + "\"");
}

Ball parse_ball(ConfigNode& node) {
  Ball ball;
  ball.center = node.require<Point>("center");
  ball.radius = node.require<double>("radius");
  if (!(ball.radius > 0.0) || ball.center.empty()) {
    throw ConfigError(node.path() + ": a ball needs a non-empty centre and a positive radius");
  }
  return ball;
}

QuadratureConfig parse_quadrature(ConfigNode& node) {
  QuadratureConfig q;
  const std::string kind = node.get<std::string>("kind", "grid");
  if (kind == "grid") {
    q.kind = QuadratureConfig::Kind::Grid;
  } else if (kind == "monte_carlo") {
    q.kind = QuadratureConfig::Kind::MonteCarlo;
  } else {
    throw ConfigError(node.where("kind") + ": expected \"grid\" or \"monte_carlo\"");
  }
  q.points = node.get<std::size_t>("points", q.points);
  if (q.points == 0) {
    throw ConfigError(node.where("points") + ": must be positive");
  }
  return q;
}

std::vector<std::size_t> parse_widths(ConfigNode& node, const std::string& key, std::vector<std::size_t> fallback) {
  std::vector<std::size_t> widths = node.get<std::vector<std::size_t>>(key, fallback);
  if (widths.empty()) {
    throw ConfigError(node.where(key) + ": at least one width is required");
  }
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (widths[i] == 0 || (i > 0 && widths[i] <= widths[i - 1])) {
      throw ConfigError(node.where(key) + ": widths must be positive and strictly increasing");
    }
  }
  return widths;
}

ForwardOp parse_functional(ConfigNode& node) {
  const std::string kind = node.require<std::string>("kind");
  if (kind == "point") {
    const double x = node.require<double>("x");
    const double r = node.get<double>("smoothing_radius", 0.0);
    if (r < 0.0) {
      throw ConfigError(node.where("smoothing_radius") + ": must be non-negative");
    }
    return ForwardOp::point_evals(PointSet::from_values({x}), r);
  }
  if (kind == "local_average" || kind == "tanh_local_average") {
    Ball ball;
    ball.center = {node.require<double>("center")};
    ball.radius = node.require<double>("radius");
    if (!(ball.radius > 0.0)) {
      throw ConfigError(node.where("radius") + ": must be positive");
    }
    ForwardOp op = ForwardOp::local_averages({ball});
    if (kind == "local_average") {
      return op;
    }
    return ForwardOp::composite(
        {op}, [](std::span<const double> v) { return std::vector<double>{std::tanh(v[0])}; }, 1, 1.0,
        "tanh of a local average");
  }
  throw ConfigError(node.where("kind") + ": expected \"point\", \"local_average\" or \"tanh_local_average\"");
}

ObservationSet load_observations(const std::filesystem::path& path) {
  ConfigNode node{read_json(path, "observation file"), path.filename().string()};
  const bool has_points = node.has("points");
  const bool has_balls = node.has("balls");
  if (has_points == has_balls) {
    throw ConfigError(path.string() + ": exactly one of \"points\" and \"balls\" is required");
  }
  std::optional<ForwardOp> forward;
  if (has_points) {
    const std::vector<double> xs = node.require<std::vector<double>>("points");
    const double r = node.get<double>("smoothing_radius", 0.0);
    if (xs.empty() || r < 0.0) {
      throw ConfigError(path.string() + ": need at least one point and a non-negative smoothing radius");
    }
    forward = ForwardOp::point_evals(PointSet::from_values(xs), r);
  } else {
    forward = ForwardOp::local_averages(parse_balls(node, "balls"));
  }
  std::vector<double> u = node.require<std::vector<double>>("u");
  if (u.size() != forward->output_dim()) {
    throw ConfigError(path.string() + ": " + std::to_string(u.size()) + " observations for " +
                      std::to_string(forward->output_dim()) + " functionals");
  }
  NoiseModel noise = node.object("noise", [&](ConfigNode& n) {
    const std::string kind = n.get<std::string>("kind", "gaussian");
    const double scale = n.get<double>("scale", 1.0);
    try {
      if (kind == "gaussian") {
        return NoiseModel::gaussian(scale, u.size());
      }
      if (kind == "cauchy") {
        return NoiseModel::cauchy(scale, u.size());
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(n.path() + ": " + e.what());
    }
    throw ConfigError(n.where("kind") + ": expected \"gaussian\" or \"cauchy\"");
  });
  node.finish();
  return {*forward, noise, std::move(u)};
}

}  // namespace stablefield::cli

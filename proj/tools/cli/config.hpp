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

#ifndef STABLEFIELD_CLI_CONFIG_HPP
#define STABLEFIELD_CLI_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "stablefield/bayes.hpp"
#include "stablefield/domain.hpp"
#include "stablefield/local_average.hpp"
#include "stablefield/network.hpp"
#include "stablefield/sobolev.hpp"

namespace stablefield::cli {

inline constexpr int kSchemaVersion = 1;

/// Invalid configuration or input: reported with exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Read-once view of a JSON object. Every key read is recorded (with its default when absent)
 * into effective(); finish() rejects keys that were never read.
 */
class ConfigNode {
 public:
  ConfigNode(nlohmann::json value, std::string path);

  template <class T>
  T get(const std::string& key, const T& fallback) {
    T out = fallback;
    if (const nlohmann::json* v = lookup(key)) {
      out = convert<T>(*v, key);
    }
    effective_[key] = out;
    return out;
  }

  template <class T>
  T require(const std::string& key) {
    const nlohmann::json* v = lookup(key);
    if (v == nullptr) {
      throw ConfigError(where(key) + ": required key is missing");
    }
    T out = convert<T>(*v, key);
    effective_[key] = out;
    return out;
  }

  template <class T>
  std::optional<T> optional(const std::string& key) {
    const nlohmann::json* v = lookup(key);
    if (v == nullptr || v->is_null()) {
      return std::nullopt;
    }
    T out = convert<T>(*v, key);
    effective_[key] = out;
    return out;
  }

  bool has(const std::string& key) const { return value_.contains(key) && !value_.at(key).is_null(); }

  /// Parse the sub-object `key` (an empty object when absent) with `parse(ConfigNode&)`.
  template <class F>
  auto object(const std::string& key, F&& parse) {
    ConfigNode child{has(key) ? value_.at(key) : nlohmann::json::object(), where(key)};
    seen_.insert(key);
    auto out = parse(child);
    child.finish();
    effective_[key] = child.effective();
    return out;
  }

  /// Parse every element of the array `key` with `parse(ConfigNode&)`.
  template <class T, class F>
  std::vector<T> list(const std::string& key, F&& parse, bool required = false) {
    std::vector<T> out;
    seen_.insert(key);
    if (!has(key)) {
      if (required) {
        throw ConfigError(where(key) + ": required key is missing");
      }
      return out;
    }
    const nlohmann::json& arr = value_.at(key);
    if (!arr.is_array()) {
      throw ConfigError(where(key) + ": expected an array");
    }
    nlohmann::json eff = nlohmann::json::array();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      ConfigNode child{arr[i], where(key) + "[" + std::to_string(i) + "]"};
      out.push_back(parse(child));
      child.finish();
      eff.push_back(child.effective());
    }
    effective_[key] = eff;
    return out;
  }

  void finish() const;
  const nlohmann::json& effective() const noexcept { return effective_; }
  const std::string& path() const noexcept { return path_; }
  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const nlohmann::json* lookup(const std::string& key) {
    seen_.insert(key);
    return value_.contains(key) ? &value_.at(key) : nullptr;
  }

  template <class T>
  T convert(const nlohmann::json& v, const std::string& key) const {
    try {
      return v.get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(where(key) + ": value " + v.dump() + " has the wrong type");
    }
  }

  nlohmann::json value_;
  std::string path_;
  std::set<std::string> seen_;
  nlohmann::json effective_ = nlohmann::json::object();
};

/// Load a config file; checks the schema version.
ConfigNode load_config(const std::filesystem::path& path);

/// `read_alpha` false leaves alpha to the caller (commands that sweep it).
NetworkConfig parse_network(ConfigNode& node, const NetworkConfig& defaults, bool read_alpha = true);
Domain parse_domain(ConfigNode& node);
Ball parse_ball(ConfigNode& node);
QuadratureConfig parse_quadrature(ConfigNode& node);
std::vector<std::size_t> parse_widths(ConfigNode& node, const std::string& key, std::vector<std::size_t> fallback);

/// Functional from {kind: "point", x, smoothing_radius}, {kind: "local_average", center, radius}
/// or {kind: "tanh_local_average", center, radius}.
ForwardOp parse_functional(ConfigNode& node);

struct ObservationSet {
  ForwardOp forward;
  NoiseModel noise;
  std::vector<double> u;
};

/// Observation file: {points | balls, smoothing_radius, u, noise: {kind, scale}}.
ObservationSet load_observations(const std::filesystem::path& path);

}  // namespace stablefield::cli

#endif  // STABLEFIELD_CLI_CONFIG_HPP

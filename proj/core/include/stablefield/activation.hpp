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

#ifndef STABLEFIELD_ACTIVATION_HPP
#define STABLEFIELD_ACTIVATION_HPP

#include <algorithm>
#include <cmath>
#include <string>

namespace stablefield {

enum class ActivationKind { ClippedLinear, Tanh, HolderPower };

/**
 * Activation function together with the constants of its two-branch continuity bound
 *
 *   |phi(x) - phi(y)| <= c  |x - y|^lambda  if |x - y| < 1,
 *   |phi(x) - phi(y)| <= c' |x - y|^beta    otherwise,
 *
 * with lambda in (0, 1] and beta in [0, 1). Unbounded (linearly growing) activations such as
 * ReLU are not representable: they would need beta = 1.
 */
class ActivationSpec {
 public:
  /// x / max(|x|, 1).
  static ActivationSpec clipped_linear();
  static ActivationSpec tanh();
  /// sign(x) min(|x|, 1)^lambda with lambda in (0, 1).
  static ActivationSpec holder_power(double lambda);

  ActivationKind kind() const noexcept { return kind_; }
  double holder_exponent() const noexcept { return lambda_; }
  double growth_exponent() const noexcept { return beta_; }
  double holder_constant() const noexcept { return c_holder_; }
  double growth_constant() const noexcept { return c_growth_; }

  double operator()(double x) const noexcept {
    switch (kind_) {
      case ActivationKind::ClippedLinear:
        return x / std::max(std::abs(x), 1.0);
      case ActivationKind::Tanh:
        return std::tanh(x);
      case ActivationKind::HolderPower:
        return std::copysign(std::pow(std::min(std::abs(x), 1.0), lambda_), x);
    }
    return 0.0;
  }

  /// Right-hand side of the continuity bound at separation |x - y|.
  double continuity_bound(double separation) const noexcept;

  std::string name() const;

  bool operator==(const ActivationSpec&) const = default;

 private:
  ActivationSpec(ActivationKind kind, double lambda, double beta, double c_holder, double c_growth);

  ActivationKind kind_;
  double lambda_;
  double beta_;
  double c_holder_;
  double c_growth_;
};

double activation_apply(const ActivationSpec& spec, double x) noexcept;

/// Parse "clipped_linear", "tanh" or "holder_power" (the latter needs lambda).
ActivationSpec parse_activation(const std::string& kind, double lambda = 0.5);

/// Calls f with a concrete function object for the activation so hot loops inline it.
template <class F>
decltype(auto) visit_activation(const ActivationSpec& spec, F&& f) {
  switch (spec.kind()) {
    case ActivationKind::ClippedLinear:
      return f([](double x) { return x / std::max(std::abs(x), 1.0); });
    case ActivationKind::Tanh:
      return f([](double x) { return std::tanh(x); });
    case ActivationKind::HolderPower:
    default: {
      const double lambda = spec.holder_exponent();
      return f([lambda](double x) { return std::copysign(std::pow(std::min(std::abs(x), 1.0), lambda), x); });
    }
  }
}

}  // namespace stablefield

#endif  // STABLEFIELD_ACTIVATION_HPP

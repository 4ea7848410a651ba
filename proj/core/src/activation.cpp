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

#include "stablefield/activation.hpp"

#include <stdexcept>

namespace stablefield {

ActivationSpec::ActivationSpec(ActivationKind kind, double lambda, double beta, double c_holder, double c_growth)
    : kind_{kind}, lambda_{lambda}, beta_{beta}, c_holder_{c_holder}, c_growth_{c_growth} {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("activation Holder exponent must lie in (0, 1]");
  }
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::invalid_argument("activation growth exponent must lie in [0, 1); linearly growing activations are not supported");
  }
}

// Both bounded activations below are 1-Lipschitz with range [-1, 1], so c = 1 and c' = 2 (beta = 0).
ActivationSpec ActivationSpec::clipped_linear() { return {ActivationKind::ClippedLinear, 1.0, 0.0, 1.0, 2.0}; }

ActivationSpec ActivationSpec::tanh() { return {ActivationKind::Tanh, 1.0, 0.0, 1.0, 2.0}; }

ActivationSpec ActivationSpec::holder_power(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("holder_power exponent must lie in (0, 1)");
  }
  // a^l + b^l <= 2^(1-l) (a + b)^l covers pairs of opposite sign.
  return {ActivationKind::HolderPower, lambda, 0.0, std::pow(2.0, 1.0 - lambda), 2.0};
}

double ActivationSpec::continuity_bound(double separation) const noexcept {
  return separation < 1.0 ? c_holder_ * std::pow(separation, lambda_) : c_growth_ * std::pow(separation, beta_);
}

std::string ActivationSpec::name() const {
  switch (kind_) {
    case ActivationKind::ClippedLinear:
      return "clipped_linear";
    case ActivationKind::Tanh:
      return "tanh";
    case ActivationKind::HolderPower:
      return "holder_power";
  }
  return "unknown";
}

double activation_apply(const ActivationSpec& spec, double x) noexcept { return spec(x); }

ActivationSpec parse_activation(const std::string& kind, double lambda) {
  if (kind == "clipped_linear") return ActivationSpec::clipped_linear();
  if (kind == "tanh") return ActivationSpec::tanh();
  if (kind == "holder_power") return ActivationSpec::holder_power(lambda);
  if (kind == "relu") {
    throw std::invalid_argument("relu is not supported: its linear growth falls outside the sublinear activation class");
  }
  throw std::invalid_argument("unknown activation kind '" + kind + "'");
}

}  // namespace stablefield

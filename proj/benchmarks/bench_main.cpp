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

#include <benchmark/benchmark.h>

#include <vector>

#include "stablefield/diagnostics.hpp"
#include "stablefield/network.hpp"
#include "stablefield/rng.hpp"
#include "stablefield/sobolev.hpp"
#include "stablefield/stable.hpp"

namespace sf = stablefield;

static void BM_SampleStable(benchmark::State& state) {
  const sf::StableParams params{static_cast<double>(state.range(0)) / 10.0, 1.0};
  sf::RngStream rng{1, 0};
  std::vector<double> out(4096);
  for (auto _ : state) {
    sf::sample_sas(params, rng, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}
BENCHMARK(BM_SampleStable)->Arg(5)->Arg(10)->Arg(15)->Arg(19);

static void BM_SampleNetwork(benchmark::State& state) {
  sf::NetworkConfig config;
  config.widths = {static_cast<std::size_t>(state.range(0))};
  const sf::RngStream rng{2, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::sample_network(config, rng));
  }
}
BENCHMARK(BM_SampleNetwork)->RangeMultiplier(16)->Range(64, 65536);

static void BM_EvaluateGrid(benchmark::State& state) {
  sf::NetworkConfig config;
  config.widths = {static_cast<std::size_t>(state.range(0))};
  const auto net = sf::sample_network(config, sf::RngStream{3, 0});
  const sf::PointSet grid = sf::PointSet::linspace(-1.0, 1.0, 2001);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::evaluate_grid(net, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2001);
}
BENCHMARK(BM_EvaluateGrid)->RangeMultiplier(16)->Range(64, 16384);

static void BM_GridQuasinorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sf::Domain domain = sf::Domain::interval(-1.0, 1.0);
  const sf::GridSeminormKernel kernel{domain, n, {0.5, 0.8, 1}};
  std::vector<double> values(n);
  sf::RngStream rng{4, 0};
  for (double& v : values) {
    v = rng.normal();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel(values));
  }
}
BENCHMARK(BM_GridQuasinorm)->RangeMultiplier(4)->Range(128, 2048);

static void BM_MonteCarloQuasinorm(benchmark::State& state) {
  const sf::FunctionField f{1, [](std::span<const double> x) { return x[0]; }};
  sf::MonteCarloConfig mc;
  mc.pairs = static_cast<std::size_t>(state.range(0));
  mc.points = mc.pairs / 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::quasinorm(f, sf::Domain::interval(0.0, 1.0), {0.5, 1.0, 1}, mc, sf::RngStream{5, 0}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloQuasinorm)->Arg(100000)->Arg(1000000);

static void BM_EnergyDistanceTest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  sf::RngStream rng{6, 0};
  sf::PointSet a{5};
  sf::PointSet b{5};
  std::vector<double> x(5);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : x) v = rng.normal();
    a.push_back(x);
    for (double& v : x) v = rng.normal();
    b.push_back(x);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::energy_distance_test(a, b, 50, 50, sf::RngStream{7, 0}));
  }
}
BENCHMARK(BM_EnergyDistanceTest)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

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

#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "stablefield/report_io.hpp"

namespace sf = stablefield;
using nlohmann::json;

namespace {

std::string csv(const sf::CsvTable& table) {
  std::ostringstream os;
  table.write(os);
  return os.str();
}

std::string header(const sf::CsvTable& table) {
  const std::string text = csv(table);
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST(ReportIo, QuasinormJson) {
  sf::QuasinormEstimate q;
  q.lp_part = 0.5;
  q.seminorm_part = 2.0;
  q.total = 2.5;
  q.pair_count = 10;
  q.point_count = 20;
  const json j = json::parse(sf::quasinorm_json(q, {0.5, 1.0, 1}, 42));
  EXPECT_EQ(j.at("total").get<double>(), 2.5);
  EXPECT_EQ(j.at("pairs").get<int>(), 10);
  EXPECT_EQ(j.at("seed").get<int>(), 42);
  for (const char* key : {"s", "p", "lp_part", "seminorm_part", "se_lp", "se_semi", "points"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(ReportIo, ValidationJson) {
  const json j = json::parse(sf::validation_json(sf::validate_params(1, 1.0, 1.5, 0.5, 1.6)));
  EXPECT_FALSE(j.at("all_passed").get<bool>());
  EXPECT_TRUE(j.at("checks").is_array());
}

TEST(ReportIo, TableHeaders) {
  EXPECT_EQ(header(sf::energy_scan_table({})), "width,mean,se,median");
  EXPECT_EQ(header(sf::convergence_table({})), "width,statistic,se,baseline,baseline_se");
  EXPECT_EQ(header(sf::lebesgue_table({})), "radius,mean,se,median");
  EXPECT_EQ(header(sf::tn_table({})), "level,median,mean,q25,q75");
  EXPECT_EQ(header(sf::ensemble_table({})), "draw,log_weight,weight");
}

TEST(ReportIo, ConvergenceRows) {
  sf::ConvergenceReport r;
  r.rows = {{64, 0.25, 0.01, 0.125, 0.0}};
  r.reference_width = 1024;
  const std::string text = csv(sf::convergence_table(r));
  EXPECT_NE(text.find("64,0.25,0.01,0.125,0"), std::string::npos) << text;
  const json j = json::parse(sf::convergence_json(r, {true, "ok"}));
  EXPECT_EQ(j.at("reference_width").get<int>(), 1024);
  EXPECT_TRUE(j.at("verdict").at("passed").get<bool>());
}

TEST(ReportIo, PosteriorConvergenceIncludesReference) {
  sf::PosteriorConvergenceReport r;
  r.rows = {{8, {0.1}, {0.01}, 50.0, 0.2, 0.02}};
  r.reference = {64, {0.3}, {0.01}, 40.0, 0.0, 0.0};
  const auto table = sf::posterior_convergence_table(r);
  EXPECT_EQ(table.rows(), 2u);
  EXPECT_EQ(header(table), "width,ess,discrepancy,discrepancy_se,mean_1,se_1");
}

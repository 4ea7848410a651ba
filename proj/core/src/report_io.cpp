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

#include "stablefield/report_io.hpp"

#include <nlohmann/json.hpp>

namespace stablefield {

namespace {

using nlohmann::json;

std::string cell(double x) { return format_double(x); }

std::string cell(std::size_t x) { return std::to_string(x); }

json fit_json(const LinearFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"slope_se", fit.slope_standard_error},
          {"slope_ci", {fit.slope_ci_low, fit.slope_ci_high}},
          {"slope_p_value", fit.slope_p_value}};
}

json verdict_object(const Verdict& verdict) { return {{"passed", verdict.passed}, {"detail", verdict.detail}}; }

json row_json(const PosteriorConvergenceRow& row) {
  return {{"width", row.width},
          {"ess", row.ess},
          {"means", row.means},
          {"standard_errors", row.standard_errors},
          {"discrepancy", row.discrepancy},
          {"discrepancy_se", row.discrepancy_se}};
}

}  // namespace

std::string quasinorm_json(const QuasinormEstimate& estimate, const SobolevParams& params, std::uint64_t seed) {
  const json j = {{"s", params.s()},
                  {"p", params.p()},
                  {"lp_part", estimate.lp_part},
                  {"seminorm_part", estimate.seminorm_part},
                  {"total", estimate.total},
                  {"se_lp", estimate.se_lp},
                  {"se_semi", estimate.se_seminorm},
                  {"pairs", estimate.pair_count},
                  {"points", estimate.point_count},
                  {"seed", seed}};
  return j.dump();
}

std::string validation_json(const ValidationReport& report) {
  json checks = json::array();
  for (const ValidationCheck& c : report.checks) {
    checks.push_back({{"name", c.name}, {"inequality", c.inequality}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return json{{"all_passed", report.all_passed()}, {"checks", checks}}.dump();
}

std::string verdict_json(const Verdict& verdict) { return verdict_object(verdict).dump(); }

CsvTable modulus_table(const ModulusReport& report) {
  CsvTable table{{"distance", "mean", "se", "median"}};
  for (const ModulusRow& r : report.rows) {
    table.row({cell(r.distance), cell(r.mean), cell(r.standard_error), cell(r.median)});
  }
  return table;
}

std::string modulus_json(const ModulusReport& report) {
  json j = fit_json(report.fit);
  j["p"] = report.p;
  j["reps"] = report.reps;
  j["widths"] = report.widths;
  j["rows"] = report.rows.size();
  return j.dump();
}

CsvTable energy_scan_table(const EnergyScanReport& report) {
  CsvTable table{{"width", "mean", "se", "median"}};
  for (const EnergyRow& r : report.rows) {
    table.row({cell(r.width), cell(r.mean), cell(r.standard_error), cell(r.median)});
  }
  return table;
}

std::string energy_scan_json(const EnergyScanReport& report) {
  return json{{"log_fit", fit_json(report.log_fit)},
              {"raw_fit", fit_json(report.raw_fit)},
              {"max_min_ratio", report.max_min_ratio},
              {"rows", report.rows.size()}}
      .dump();
}

CsvTable convergence_table(const ConvergenceReport& report) {
  CsvTable table{{"width", "statistic", "se", "baseline", "baseline_se"}};
  for (const ConvergenceRow& r : report.rows) {
    table.row({cell(r.width), cell(r.statistic), cell(r.standard_error), cell(r.baseline), cell(r.baseline_se)});
  }
  return table;
}

std::string convergence_json(const ConvergenceReport& report, const Verdict& verdict) {
  return json{{"reference_width", report.reference_width},
              {"reps", report.reps},
              {"features", report.features},
              {"verdict", verdict_object(verdict)}}
      .dump();
}

CsvTable lebesgue_table(const LebesgueReport& report) {
  CsvTable table{{"radius", "mean", "se", "median"}};
  for (const LebesgueRow& r : report.rows) {
    table.row({cell(r.radius), cell(r.mean), cell(r.standard_error), cell(r.median)});
  }
  return table;
}

std::string lebesgue_json(const LebesgueReport& report, const Verdict& verdict) {
  return json{{"width", report.width}, {"rows", report.rows.size()}, {"verdict", verdict_object(verdict)}}.dump();
}

CsvTable tn_table(const TnReport& report) {
  CsvTable table{{"level", "median", "mean", "q25", "q75"}};
  for (const TnRow& r : report.rows) {
    table.row({std::to_string(r.level), cell(r.median), cell(r.mean), cell(r.lower_quartile),
               cell(r.upper_quartile)});
  }
  return table;
}

std::string tn_json(const TnReport& report, const Verdict& verdict) {
  return json{{"width", report.width}, {"rows", report.rows.size()}, {"verdict", verdict_object(verdict)}}.dump();
}

std::string posterior_json(const PosteriorEnsemble& ensemble) {
  json functionals = json::array();
  const std::size_t k_count = ensemble.size() == 0 ? 0 : ensemble.functional_values.front().size();
  for (std::size_t k = 0; k < k_count; ++k) {
    const Estimate post = posterior_expectation(ensemble, k);
    const Estimate prior = prior_expectation(ensemble, k);
    functionals.push_back({{"index", k},
                           {"posterior_mean", post.value},
                           {"posterior_se", post.standard_error},
                           {"prior_mean", prior.value},
                           {"prior_se", prior.standard_error}});
  }
  return json{{"draws", ensemble.size()},
              {"ess", ensemble.ess},
              {"log_evidence", ensemble.log_normalizer},
              {"functionals", functionals}}
      .dump();
}

CsvTable ensemble_table(const PosteriorEnsemble& ensemble) {
  std::vector<std::string> header{"draw", "log_weight", "weight"};
  const std::size_t m = ensemble.size() == 0 ? 0 : ensemble.forward_images.front().size();
  const std::size_t k_count = ensemble.size() == 0 ? 0 : ensemble.functional_values.front().size();
  for (std::size_t i = 1; i <= m; ++i) {
    header.push_back("g_" + std::to_string(i));
  }
  for (std::size_t i = 1; i <= k_count; ++i) {
    header.push_back("F_" + std::to_string(i));
  }
  CsvTable table{std::move(header)};
  if (ensemble.size() == 0) {
    return table;
  }
  const std::vector<double> w = ensemble.normalized_weights();
  for (std::size_t j = 0; j < ensemble.size(); ++j) {
    std::vector<std::string> cells{cell(j), cell(ensemble.log_weights[j]), cell(w[j])};
    for (const double g : ensemble.forward_images[j]) {
      cells.push_back(cell(g));
    }
    for (const double f : ensemble.functional_values[j]) {
      cells.push_back(cell(f));
    }
    table.row(std::move(cells));
  }
  return table;
}

std::string oracle_json(const OracleResult& oracle) {
  return json{{"means", oracle.means},
              {"quadrature_errors", oracle.quadrature_errors},
              {"log_evidence", oracle.log_evidence}}
      .dump();
}

CsvTable posterior_convergence_table(const PosteriorConvergenceReport& report) {
  std::vector<std::string> header{"width", "ess", "discrepancy", "discrepancy_se"};
  const std::size_t k_count = report.reference.means.size();
  for (std::size_t k = 1; k <= k_count; ++k) {
    header.push_back("mean_" + std::to_string(k));
    header.push_back("se_" + std::to_string(k));
  }
  CsvTable table{std::move(header)};
  auto add = [&](const PosteriorConvergenceRow& r) {
    std::vector<std::string> cells{cell(r.width), cell(r.ess), cell(r.discrepancy), cell(r.discrepancy_se)};
    for (std::size_t k = 0; k < k_count; ++k) {
      cells.push_back(cell(r.means[k]));
      cells.push_back(cell(r.standard_errors[k]));
    }
    table.row(std::move(cells));
  };
  for (const PosteriorConvergenceRow& r : report.rows) {
    add(r);
  }
  add(report.reference);
  return table;
}

std::string posterior_convergence_json(const PosteriorConvergenceReport& report, const Verdict& verdict) {
  json rows = json::array();
  for (const PosteriorConvergenceRow& r : report.rows) {
    rows.push_back(row_json(r));
  }
  return json{{"rows", rows}, {"reference", row_json(report.reference)}, {"verdict", verdict_object(verdict)}}
      .dump();
}

}  // namespace stablefield

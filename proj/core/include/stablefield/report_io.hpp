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

#ifndef STABLEFIELD_REPORT_IO_HPP
#define STABLEFIELD_REPORT_IO_HPP

#include <cstdint>
#include <string>

#include "stablefield/bayes.hpp"
#include "stablefield/diagnostics.hpp"
#include "stablefield/field_io.hpp"
#include "stablefield/sobolev.hpp"

/**
 * \file
 * \brief CSV tables and JSON summaries for every report type.
 *
 * JSON functions return a single serialized object. Doubles are written with shortest
 * round-trip formatting; the layouts are documented in docs/formats.md.
 */

namespace stablefield {

/// {s, p, lp_part, seminorm_part, total, se_lp, se_semi, pairs, points, seed}
std::string quasinorm_json(const QuasinormEstimate& estimate, const SobolevParams& params, std::uint64_t seed);

/// {all_passed, checks: [{name, inequality, passed, detail}]}
std::string validation_json(const ValidationReport& report);

std::string verdict_json(const Verdict& verdict);

/// distance, mean, se, median
CsvTable modulus_table(const ModulusReport& report);
/// {p, reps, widths, slope, intercept, slope_se, slope_ci: [lo, hi], rows}
std::string modulus_json(const ModulusReport& report);

/// width, mean, se, median
CsvTable energy_scan_table(const EnergyScanReport& report);
std::string energy_scan_json(const EnergyScanReport& report);

/// width, statistic, se, baseline, baseline_se
CsvTable convergence_table(const ConvergenceReport& report);
std::string convergence_json(const ConvergenceReport& report, const Verdict& verdict);

/// radius, mean, se, median
CsvTable lebesgue_table(const LebesgueReport& report);
std::string lebesgue_json(const LebesgueReport& report, const Verdict& verdict);

/// level, median, mean, q25, q75
CsvTable tn_table(const TnReport& report);
std::string tn_json(const TnReport& report, const Verdict& verdict);

/// {draws, ess, log_evidence, functionals: [{index, posterior_mean, posterior_se, prior_mean, prior_se}]}
std::string posterior_json(const PosteriorEnsemble& ensemble);

/// draw, log_weight, weight, g_1..g_M, F_1..F_K
CsvTable ensemble_table(const PosteriorEnsemble& ensemble);

/// {means, quadrature_errors, log_evidence}
std::string oracle_json(const OracleResult& oracle);

/// width, ess, discrepancy, discrepancy_se, mean_k, se_k for each functional k
CsvTable posterior_convergence_table(const PosteriorConvergenceReport& report);
std::string posterior_convergence_json(const PosteriorConvergenceReport& report, const Verdict& verdict);

}  // namespace stablefield

#endif  // STABLEFIELD_REPORT_IO_HPP

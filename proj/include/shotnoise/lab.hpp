/*
 * Copyright (C) 2026 The shotnoise-lab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shotnoise/config.hpp"
#include "shotnoise/oracle.hpp"
#include "shotnoise/stats.hpp"

namespace shotnoise {

inline constexpr int kReportSchemaVersion = 1;

/// Exit statuses of the lab runner.
enum ExitStatus : int { kExitPass = 0, kExitFailed = 1, kExitConfigError = 2 };

/// Command-line values that take precedence over the config file.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<int> threads;
  std::optional<std::vector<std::string>> formats;
};

/// Repeated two-sample KS comparisons.
struct KsRepetitions {
  std::vector<KsResult> runs;
  int passes = 0;
  bool pass = false;
};

/*!
 * \brief Self-similarity of Y_{alpha,beta} ("stable") or Z_{alpha,beta}
 * ("inverse_subordinator"): X(c u) against c^H X(u), H = beta + 1/alpha or
 * beta + alpha.
 *
 * Both sides use the same grid size, so they are equal in law exactly, not
 * only in the continuum limit.
 */
KsRepetitions selfsim_check(const SelfSimConfig& cfg, std::uint64_t seed, int threads);

/// Y_{alpha,beta}(u) on an n-point grid against p3_scale * W_alpha(1).
KsRepetitions p3_check(double alpha, double beta, double u, long grid_points, long paths,
                       int repetitions, int min_passes, double p_threshold, std::uint64_t seed,
                       int threads);

/// log E exp(i z D_alpha(1)) = -Gamma(1-alpha) (-i z)^alpha.
std::complex<double> subordinator_log_cf(double alpha, double z);

struct StableCheckRow {
  std::string law;  // "spectrally_negative" or "subordinator"
  double alpha = 0.0;
  double z = 0.0;
  double deviation = 0.0;  // max of real/imaginary deviation in s.e. units
  bool pass = false;
};

struct StableCheckResult {
  std::vector<StableCheckRow> rows;
  bool pass = false;
};

StableCheckResult stable_check(const StableCheckConfig& cfg, std::uint64_t seed, int threads);

/// Report serializations. Both embed the resolved config and the seed.
nlohmann::json report_to_json(const ConvergenceReport& report, const ExperimentConfig& cfg);
std::string report_to_csv(const ConvergenceReport& report, const ExperimentConfig& cfg);
std::string moment_table_csv(const MomentTable& table, const nlohmann::json& provenance);

/// "%.17g" formatting, independent of the global locale.
std::string format_number(double v);

/*!
 * \brief Runs a subcommand against a config file.
 *
 * Writes result files under the output directory, a one-line JSON summary
 * to `out`, and error JSON to `err`. Returns an ExitStatus.
 */
int run(const std::string& subcommand, const std::string& config_path,
        const RunOverrides& overrides, std::ostream& out, std::ostream& err);

/// Same, with an already-parsed config document.
int run_document(const std::string& subcommand, const nlohmann::json& doc,
                 const RunOverrides& overrides, std::ostream& out, std::ostream& err);

/// The `moments` subcommand without a config: CSV on `out`.
int run_moments(const MomentsConfig& cfg, std::ostream& out, std::ostream& err);

/// Machine-readable error record.
nlohmann::json error_json(const std::string& type, const std::string& message, int exit_code);

}  // namespace shotnoise

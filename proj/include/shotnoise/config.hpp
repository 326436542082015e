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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shotnoise/renewal.hpp"
#include "shotnoise/response.hpp"

namespace shotnoise {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of the `selfsim` subcommand.
struct SelfSimConfig {
  /// "stable" (Y_{alpha,beta}) or "inverse_subordinator" (Z_{alpha,beta}).
  std::string process = "stable";
  double alpha = 1.5;
  double beta = 1.0;
  double c = 2.0;
  double u = 1.0;
  long paths = 100000;
  long grid_points = 512;
  int repetitions = 5;
  int min_passes = 4;
  double p_threshold = 0.01;
};

/// Parameters of the `stable-check` subcommand.
struct StableCheckConfig {
  std::vector<double> alphas{1.2, 1.5, 1.8};
  std::vector<double> subordinator_alphas{0.5};
  std::vector<double> z{0.5, 1.0, 2.0};
  long draws = 1000000;
  double max_se = 4.0;
};

/// Parameters of the `moments` subcommand.
struct MomentsConfig {
  double alpha = 0.5;
  double beta = 1.0;
  double u = 1.0;
  int k = 5;
};

/// A fully resolved experiment description.
struct ExperimentConfig {
  std::optional<LimitCase> forced_case;
  InterArrivalLaw law = InterArrivalLaw::exponential(1.0);
  ResponseFunction response = ResponseFunction::indicator(1.0);
  std::vector<double> t_ladder{100.0, 1000.0, 10000.0};
  std::vector<double> u_points{0.5, 1.0};
  long replicates = 10000;
  long grid_points = 512;
  long limit_samples = 10000;
  std::vector<double> z_grid{0.5, 1.0, 2.0};
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  std::vector<std::string> formats{"csv", "json"};
  int threads = 0;
  /// Paths written by `simulate`.
  long export_paths = 10;

  SelfSimConfig selfsim;
  StableCheckConfig stable_check;
  MomentsConfig moments;

  /// The config as parsed, with defaults filled in.
  nlohmann::json resolved;
};

/// Builds a config from its JSON form; throws ConfigError on any problem.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a config file.
ExperimentConfig load_config(const std::string& path);

/// JSON form of a config. Execution settings (threads, output directory and
/// formats) are left out: they never change results.
nlohmann::json to_json(const ExperimentConfig& cfg);

InterArrivalLaw parse_law(const nlohmann::json& j);
ResponseFunction parse_response(const nlohmann::json& j);
nlohmann::json law_to_json(const InterArrivalLaw& law);
nlohmann::json response_to_json(const ResponseFunction& h);

}  // namespace shotnoise

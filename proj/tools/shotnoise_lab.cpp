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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shotnoise/lab.hpp"

namespace {

std::vector<std::string> split_formats(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo lab for renewal shot noise and its scaling limits", "shotnoise-lab"};
  std::string subcommand;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::optional<std::string> formats;
  std::optional<double> alpha, beta, u;
  std::optional<int> k;

  app.add_option("subcommand", subcommand, "simulate | verify-limit | moments | selfsim | stable-check")
      ->required()
      ->check(CLI::IsMember({"simulate", "verify-limit", "moments", "selfsim", "stable-check"}));
  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--threads", threads, "worker threads; 0 = available parallelism")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", formats, "comma-separated output formats: csv,json,svg");
  app.add_option("--alpha", alpha, "moments: alpha in (0, 1)");
  app.add_option("--beta", beta, "moments: beta >= 0");
  app.add_option("--k", k, "moments: largest moment order");
  app.add_option("--u", u, "moments: time point (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << shotnoise::error_json("usage_error", e.what(), shotnoise::kExitConfigError).dump()
              << "\n";
    return shotnoise::kExitConfigError;
  }

  const bool moment_flags = alpha || beta || k || u;
  if (moment_flags && subcommand != "moments") {
    std::cerr << shotnoise::error_json("usage_error", "--alpha/--beta/--k/--u only apply to 'moments'",
                                       shotnoise::kExitConfigError).dump()
              << "\n";
    return shotnoise::kExitConfigError;
  }

  shotnoise::RunOverrides overrides;
  overrides.seed = seed;
  overrides.output_dir = out_dir;
  overrides.threads = threads;
  if (formats) overrides.formats = split_formats(*formats);

  if (subcommand == "moments" && moment_flags) {
    nlohmann::json doc = nlohmann::json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      try {
        doc = nlohmann::json::parse(in, nullptr, true, true);
      } catch (const nlohmann::json::exception& e) {
        std::cerr << shotnoise::error_json("config_error", e.what(), shotnoise::kExitConfigError).dump()
                  << "\n";
        return shotnoise::kExitConfigError;
      }
    }
    if (!doc.is_object()) doc = nlohmann::json::object();
    nlohmann::json& m = doc["moments"];
    if (m.is_null()) m = nlohmann::json::object();
    if (alpha) m["alpha"] = *alpha;
    if (beta) m["beta"] = *beta;
    if (k) m["k"] = *k;
    if (u) m["u"] = *u;
    // Without a config or --out nothing is written; the table goes to stdout.
    if (config_path.empty() && !out_dir) {
      shotnoise::MomentsConfig mc;
      mc.alpha = m.value("alpha", mc.alpha);
      mc.beta = m.value("beta", mc.beta);
      mc.k = m.value("k", mc.k);
      mc.u = m.value("u", mc.u);
      return shotnoise::run_moments(mc, std::cout, std::cerr);
    }
    return shotnoise::run_document(subcommand, doc, overrides, std::cout, std::cerr);
  }

  if (config_path.empty()) {
    std::cerr << shotnoise::error_json("usage_error", "--config is required", shotnoise::kExitConfigError).dump()
              << "\n";
    return shotnoise::kExitConfigError;
  }
  return shotnoise::run(subcommand, config_path, overrides, std::cout, std::cerr);
}

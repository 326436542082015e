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

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "shotnoise/config.hpp"
#include "shotnoise/lab.hpp"

using namespace shotnoise;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("shotnoise_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_doc(const std::string& sub, const json& doc, const RunOverrides& o = {}) {
  std::ostringstream out, err;
  const int code = run_document(sub, doc, o, out, err);
  return {code, out.str(), err.str()};
}

json small_a1(const fs::path& dir) {
  return {{"law", {{"family", "exponential"}, {"rate", 1.0}}},
          {"response", {{"kind", "indicator"}}},
          {"t_ladder", {100, 400}},
          {"u_points", {0.5, 1.0}},
          {"replicates", 500},
          {"limit_samples", 500},
          {"seed", 12},
          {"output", {{"dir", dir.string()}, {"formats", {"csv", "json", "svg"}}}}};
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("moments without a config") {
  std::ostringstream out, err;
  MomentsConfig m;
  m.alpha = 0.5;
  m.beta = 1.0;
  m.k = 1;
  CHECK(run_moments(m, out, err) == kExitPass);
  CHECK(out.str().find("0.424413") != std::string::npos);
  CHECK(out.str().find("k,alpha,beta,u,moment") != std::string::npos);
  m.alpha = 1.5;
  CHECK(run_moments(m, out, err) == kExitConfigError);
}

TEST_CASE("config errors exit with 2 and error JSON") {
  const auto dir = scratch("errors");
  json bad = small_a1(dir);
  bad["replicates"] = 0;
  auto r = run_doc("verify-limit", bad);
  CHECK(r.code == kExitConfigError);
  const json e = json::parse(r.err.substr(0, r.err.find('\n')));
  CHECK(e["error"]["type"] == "config_error");
  CHECK(e["exit_code"] == 2);

  json unknown = small_a1(dir);
  unknown["replicatse"] = 10;
  CHECK(run_doc("verify-limit", unknown).code == kExitConfigError);
  json decreasing = small_a1(dir);
  decreasing["t_ladder"] = {100, 10};
  CHECK(run_doc("verify-limit", decreasing).code == kExitConfigError);
  json law = small_a1(dir);
  law["law"] = {{"family", "pareto"}, {"alpha", -1.0}};
  CHECK(run_doc("verify-limit", law).code == kExitConfigError);
  json forced = small_a1(dir);
  forced["case"] = "a3";
  CHECK(run_doc("verify-limit", forced).code == kExitConfigError);
  CHECK(run_doc("nonsense", small_a1(dir)).code == kExitConfigError);

  std::ostringstream out, err;
  CHECK(run("verify-limit", (dir / "missing.json").string(), {}, out, err) == kExitConfigError);
  std::ofstream(dir / "broken.json") << "{ \"seed\": ";
  CHECK(run("verify-limit", (dir / "broken.json").string(), {}, out, err) == kExitConfigError);
}

TEST_CASE("config parsing round trip") {
  const auto dir = scratch("roundtrip");
  json doc = small_a1(dir);
  doc["response"] = {{"kind", "two_sided"},
                     {"right", {{"kind", "power"}, {"beta", 1.0}, {"slowly_varying", {{"form", "log_power"}, {"c", 2.0}, {"p", -0.5}}}}},
                     {"left_tail", {{"decay", "power"}, {"amplitude", 1.0}, {"exponent", 3.0}}}};
  doc["law"] = {{"family", "pareto_log"}, {"alpha", 1.5}, {"xm", 2.0}, {"p", 1.0}};
  doc["seed"] = "18446744073709551615";
  const auto cfg = parse_config(doc);
  CHECK(cfg.seed == 18446744073709551615ull);
  const auto again = parse_config(to_json(cfg));
  CHECK(to_json(again) == to_json(cfg));
  CHECK(to_json(cfg).contains("threads") == false);
}

TEST_CASE("verify-limit writes self-describing, reproducible reports") {
  const auto d1 = scratch("det1");
  const auto d2 = scratch("det2");
  RunOverrides one;
  one.threads = 1;
  RunOverrides many;
  many.threads = 3;
  many.output_dir = d2.string();
  const auto r1 = run_doc("verify-limit", small_a1(d1), one);
  const auto r2 = run_doc("verify-limit", small_a1(d1), many);
  CHECK(r1.code == r2.code);
  for (const char* f : {"report.csv", "report.json", "statistics.svg", "ecdf_u1.svg", "ecdf_u0p5.svg"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(d1 / f));
    CHECK(slurp(d1 / f) == slurp(d2 / f));
  }
  const json rep = json::parse(slurp(d1 / "report.json"));
  CHECK(rep["schema_version"] == kReportSchemaVersion);
  CHECK(rep["seed"] == 12);
  CHECK(rep["config"]["replicates"] == 500);
  CHECK(rep["entries"].size() == 2);
  const std::string csv = slurp(d1 / "report.csv");
  CHECK(csv.find("# seed=12\n") != std::string::npos);
  CHECK(csv.find("# config={") != std::string::npos);
  CHECK(csv.find("t,u,check,statistic,unit,threshold,aux,pass,informational,verdict\n") != std::string::npos);

  RunOverrides seeded = one;
  seeded.seed = 13;
  run_doc("verify-limit", small_a1(d1), seeded);
  CHECK(json::parse(slurp(d1 / "report.json"))["seed"] == 13);
  CHECK(slurp(d1 / "report.csv") != slurp(d2 / "report.csv"));
}

TEST_CASE("A5 is informational") {
  const auto dir = scratch("a5");
  json doc = small_a1(dir);
  doc["law"] = {{"family", "pareto"}, {"alpha", 1.0}, {"xm", 1.0}};
  doc["u_points"] = {1.0};
  const auto r = run_doc("verify-limit", doc);
  CHECK(r.code == kExitPass);
  const json rep = json::parse(slurp(dir / "report.json"));
  CHECK(rep["case"] == "A5");
  CHECK(rep["verdict_status"] == "informational");
  for (const auto& e : rep["entries"]) {
    for (const auto& c : e["checks"]) CHECK(c["informational"] == true);
  }
}

TEST_CASE("simulate, selfsim, stable-check and moments subcommands") {
  const auto dir = scratch("subs");
  json doc = small_a1(dir);
  doc["export_paths"] = 3;
  doc["grid_points"] = 11;
  doc["selfsim"] = {{"paths", 2000}, {"grid_points", 16}, {"repetitions", 2}, {"min_passes", 1}};
  doc["stable_check"] = {{"draws", 20000}};
  doc["moments"] = {{"alpha", 0.5}, {"beta", 1.0}, {"k", 3}};

  CHECK(run_doc("simulate", doc).code == kExitPass);
  const std::string paths = slurp(dir / "paths.csv");
  CHECK(paths.find("replicate,t,u,x,normalized\n") != std::string::npos);
  CHECK(std::count(paths.begin(), paths.end(), '\n') == 4 + 1 + 3 * 11);
  CHECK(json::parse(slurp(dir / "paths.json"))["paths"].size() == 3);

  CHECK(run_doc("selfsim", doc).code == kExitPass);
  CHECK(json::parse(slurp(dir / "selfsim.json"))["runs"].size() == 2);

  CHECK(run_doc("stable-check", doc).code == kExitPass);
  json strict = doc;
  strict["stable_check"]["max_se"] = 1e-6;
  const auto failed = run_doc("stable-check", strict);
  CHECK(failed.code == kExitFailed);
  CHECK(failed.err.find("verdict_failed") != std::string::npos);

  const auto m = run_doc("moments", doc);
  CHECK(m.code == kExitPass);
  CHECK(m.out.find("0.42441318") != std::string::npos);
  CHECK(slurp(dir / "moments.csv").find("# config=") != std::string::npos);
  CHECK(json::parse(slurp(dir / "moments.json"))["table"]["moments"].size() == 3);
}

TEST_CASE("command-line executable") {
  const auto dir = scratch("exe");
  const std::string exe = SHOTNOISE_LAB_EXE;
  const std::string out = (dir / "stdout.txt").string();
  const std::string err = (dir / "stderr.txt").string();
  CHECK(shell(exe + " moments --alpha 0.5 --beta 1 --k 1 > " + out) == 0);
  CHECK(slurp(out).find("0.424413") != std::string::npos);

  std::ofstream(dir / "bad.json") << R"({"replicates": 0})";
  CHECK(shell(exe + " verify-limit --config " + (dir / "bad.json").string() + " > " + out + " 2> " + err) == 2);
  CHECK(json::parse(slurp(err).substr(0, slurp(err).find('\n')))["exit_code"] == 2);

  CHECK(shell(exe + " frobnicate --config x.json 2> " + err) == 2);
  CHECK(shell(exe + " verify-limit 2> " + err) == 2);

  std::ofstream(dir / "ok.json") << small_a1(dir / "o1").dump();
  const std::string base = exe + " verify-limit --config " + (dir / "ok.json").string() + " --format csv";
  const int c1 = shell(base + " --threads 1 --out " + (dir / "o1").string() + " > " + out);
  const int c2 = shell(base + " --threads 2 --out " + (dir / "o2").string() + " > " + out);
  CHECK(c1 == c2);
  CHECK(slurp(dir / "o1" / "report.csv") == slurp(dir / "o2" / "report.csv"));
  CHECK_FALSE(fs::exists(dir / "o1" / "report.json"));
}

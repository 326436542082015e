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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "shotnoise/lab.hpp"
#include "shotnoise/limits.hpp"
#include "shotnoise/oracle.hpp"
#include "shotnoise/parallel.hpp"
#include "shotnoise/response.hpp"
#include "shotnoise/stats.hpp"

using namespace shotnoise;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const CheckResult& find_check(const ConvergenceEntry& e, const std::string& name, double u) {
  for (const auto& c : e.checks) {
    if (c.name == name && c.u == u) return c;
  }
  throw std::runtime_error("missing check " + name);
}

ExperimentConfig desk_config(InterArrivalLaw law, ResponseFunction h, std::vector<double> ladder,
                             std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.law = law;
  cfg.response = h;
  cfg.t_ladder = std::move(ladder);
  cfg.u_points = {1.0};
  cfg.replicates = 10000;
  cfg.limit_samples = 10000;
  cfg.grid_points = 128;
  cfg.seed = seed;
  cfg.threads = 0;
  cfg.resolved = to_json(cfg);
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome stable_cf() {
  StableCheckConfig cfg;
  cfg.alphas = {1.2, 1.5, 1.8};
  cfg.subordinator_alphas = {};
  cfg.z = {0.5, 1.0, 2.0};
  cfg.draws = 1000000;
  cfg.max_se = 4.0;
  const auto r = stable_check(cfg, 2026, 0);
  double worst = 0.0;
  for (const auto& row : r.rows) worst = std::max(worst, row.deviation);
  return {r.pass, "max deviation " + fmt("%.3f", worst) + " s.e. over 9 (alpha, z) pairs (limit 4)"};
}

Outcome moment_forms() {
  double worst = 0.0;
  for (double a : {0.25, 0.5, 0.75}) {
    for (double b : {0.5, 1.0, 2.0}) {
      for (int k = 1; k <= 5; ++k) {
        const double x = z_moment(a, b, 1.0, k);
        worst = std::max(worst, std::abs(z_moment_phi_form(a, b, k) - x) / x);
      }
    }
  }
  return {worst <= 1e-10, "max relative gap " + fmt("%.2e", worst) + " (limit 1e-10)"};
}

Outcome gaussian_fractional_moments() {
  const FractionalStableSampler y(StableSpec::spectrally_negative(2.0), 1.0, 1.0, 2048);
  const long n = 100000;
  std::vector<double> v(static_cast<std::size_t>(n));
  parallel_for(v.size(), 0, [&](std::size_t i) {
    RngStream rng = RngStream::for_replicate(303, i);
    v[i] = y(rng);
  });
  const double m2 = raw_moment(v, 2).value;
  const double m4 = raw_moment(v, 4).value;
  const double target2 = 1.0 / 3.0;
  const double target4 = 3.0 * target2 * target2;
  const double e2 = std::abs(m2 / target2 - 1.0);
  const double e4 = std::abs(m4 / target4 - 1.0);
  return {e2 < 0.02 && e4 < 0.05, "variance " + fmt("%.5f", m2) + " (" + fmt("%.2f", 100 * e2) +
                                      "% off, limit 2%), fourth moment " + fmt("%.5f", m4) + " (" +
                                      fmt("%.2f", 100 * e4) + "% off, limit 5%)"};
}

std::string p_list(const KsRepetitions& r) {
  std::string s;
  for (const auto& k : r.runs) s += (s.empty() ? "" : ",") + fmt("%.3f", k.p_value);
  return s;
}

Outcome p3_marginal() {
  const auto r = p3_check(1.5, 1.0, 1.0, 512, 100000, 5, 4, 0.01, 404, 0);
  return {r.pass, std::to_string(r.passes) + "/5 repetitions with p > 0.01 (p = " + p_list(r) + ")"};
}

Outcome self_similarity() {
  SelfSimConfig y;
  y.process = "stable";
  y.alpha = 1.5;
  y.beta = 1.0;
  y.c = 2.0;
  y.u = 1.0;
  y.paths = 100000;
  y.grid_points = 256;
  y.repetitions = 5;
  y.min_passes = 4;
  const auto ry = selfsim_check(y, 505, 0);
  SelfSimConfig z = y;
  z.process = "inverse_subordinator";
  z.alpha = 0.5;
  z.grid_points = 33;
  const auto rz = selfsim_check(z, 506, 0);
  return {ry.pass && rz.pass, "Y: " + std::to_string(ry.passes) + "/5 (p = " + p_list(ry) + "); Z: " +
                                  std::to_string(rz.passes) + "/5 (p = " + p_list(rz) + ")"};
}

Outcome a1_desk() {
  const auto law = InterArrivalLaw::exponential(1.0);
  const auto r0 = convergence_sweep(desk_config(law, ResponseFunction::indicator(1.0), {1e4}, 606));
  const auto r1 = convergence_sweep(desk_config(law, ResponseFunction::power(1.0), {1e4}, 607));
  const double d0 = find_check(r0.entries.back(), "ks_gaussian", 1.0).statistic;
  const double d1 = find_check(r1.entries.back(), "ks_gaussian", 1.0).statistic;
  return {d0 < 0.02 && d1 < 0.03, "h = 1: KS " + fmt("%.4f", d0) + " (limit 0.02); h(y) = y: KS " +
                                      fmt("%.4f", d1) + " vs N(0, 1/3) (limit 0.03)"};
}

Outcome a4_desk() {
  auto cfg = desk_config(InterArrivalLaw::pareto(0.5, 1.0), ResponseFunction::indicator(1.0), {1e3, 1e4}, 707);
  const auto r = convergence_sweep(cfg);
  const auto& last = r.entries.back();
  const double s1 = find_check(last, "moment_1", 1.0).statistic;
  const double s2 = find_check(last, "moment_2", 1.0).statistic;
  auto a = r.samples[0][0];
  auto b = r.samples[1][0];
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto ks = ks_two_sample(a, b);
  const bool moments_ok = s1 < 4.0 && s2 < 4.0;
  const bool ks_ok = ks.p_value > 0.01;
  return {moments_ok && ks_ok, "moments " + fmt("%.2f", s1) + " and " + fmt("%.2f", s2) +
                                   " s.e. (limit 4); KS t=1e3 vs 1e4: D " + fmt("%.4f", ks.distance) +
                                   ", p " + fmt("%.2e", ks.p_value) + " (needs p > 0.01)"};
}

Outcome a3_desk() {
  auto cfg = desk_config(InterArrivalLaw::pareto(1.5, 1.0), ResponseFunction::indicator(1.0), {1e4}, 808);
  const auto r = convergence_sweep(cfg);
  const double dev = find_check(r.entries.back(), "ecf", 1.0).statistic;
  return {dev < 5.0, "ECF max deviation " + fmt("%.3f", dev) + " s.e. (limit 5)"};
}

Outcome smoothing() {
  const auto h = ResponseFunction::power(1.0);
  const auto hs = smooth_response(h);
  double worst = 0.0;
  for (double t : {0.1, 1.0, 10.0, 100.0}) worst = std::max(worst, std::abs(hs(t) - (t - 1.0 + std::exp(-t))));
  const double t = 1e4;
  const double ratio = (centering_integral(h, t) - centering_integral(hs, t)) / h(t);
  return {worst < 1e-9 && ratio >= 0.95 && ratio <= 1.05,
          "closed-form error " + fmt("%.2e", worst) + " (limit 1e-9); integral ratio " + fmt("%.6f", ratio) +
              " (range [0.95, 1.05])"};
}

Outcome two_sided() {
  const auto law = InterArrivalLaw::exponential(1.0);
  const auto right = ResponseFunction::power(1.0);
  const auto both = ResponseFunction::two_sided(right, LeftTail::exponential(1.0, 1.0));
  const auto r1 = convergence_sweep(desk_config(law, right, {1e4}, 909));
  const auto r2 = convergence_sweep(desk_config(law, both, {1e4}, 909));
  const double d1 = find_check(r1.entries.back(), "ks_gaussian", 1.0).statistic;
  const double d2 = find_check(r2.entries.back(), "ks_gaussian", 1.0).statistic;
  const bool same = r1.entries.back().verdict == r2.entries.back().verdict;
  return {std::abs(d1 - d2) < 0.005 && same,
          "KS one-sided " + fmt("%.5f", d1) + ", two-sided " + fmt("%.5f", d2) + ", difference " +
              fmt("%.2e", std::abs(d1 - d2)) + " (limit 0.005); verdicts " + (same ? "equal" : "differ")};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "shotnoise_acceptance_determinism";
  fs::remove_all(root);
  const nlohmann::json doc = {{"law", {{"family", "pareto"}, {"alpha", 1.5}, {"xm", 1.0}}},
                              {"response", {{"kind", "power"}, {"beta", 0.5}}},
                              {"t_ladder", {100, 1000}},
                              {"u_points", {0.5, 1.0}},
                              {"replicates", 3000},
                              {"limit_samples", 3000},
                              {"seed", 1111},
                              {"output", {{"formats", {"csv", "json"}}}}};
  std::vector<std::pair<int, std::string>> runs{{1, "a"}, {4, "b"}, {1, "c"}, {2, "d"}};
  std::vector<std::string> csv, json;
  for (const auto& [threads, name] : runs) {
    RunOverrides o;
    o.threads = threads;
    o.output_dir = (root / name).string();
    std::ostringstream out, err;
    run_document("verify-limit", doc, o, out, err);
    csv.push_back(slurp(root / name / "report.csv"));
    json.push_back(slurp(root / name / "report.json"));
  }
  bool same = !csv[0].empty() && !json[0].empty();
  for (std::size_t i = 1; i < runs.size(); ++i) same = same && csv[i] == csv[0] && json[i] == json[0];
  return {same, same ? "report.csv and report.json byte-identical for threads 1, 4, 1, 2"
                     : "reports differ between runs"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"stable sampler vs characteristic function", stable_cf},
      {"moment formula vs product form", moment_forms},
      {"Gaussian fractional integral moments", gaussian_fractional_moments},
      {"marginal law of Y", p3_marginal},
      {"self-similarity of Y and Z", self_similarity},
      {"finite variance limit at t = 1e4", a1_desk},
      {"infinite mean limit at t = 1e4", a4_desk},
      {"stable limit at t = 1e4", a3_desk},
      {"exponential smoothing", smoothing},
      {"two-sided response", two_sided},
      {"determinism across thread counts", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s  %2zu  %-45s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

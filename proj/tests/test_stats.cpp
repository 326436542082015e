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

#include <algorithm>
#include <cmath>
#include <vector>

#include "shotnoise/lab.hpp"
#include "shotnoise/oracle.hpp"
#include "shotnoise/rng.hpp"
#include "shotnoise/stats.hpp"

using namespace shotnoise;
using doctest::Approx;

namespace {

std::vector<double> normals(long n, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = standard_normal(rng);
  return v;
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("sample summary") {
  const std::vector<double> x{3.0, 1.0, 2.0, 2.0, 7.0};
  const auto s = summarize(x);
  CHECK(s.n == 5);
  CHECK(s.mean == Approx(3.0));
  CHECK(s.variance == Approx(5.5));
  CHECK(s.standard_error_mean == Approx(std::sqrt(5.5 / 5.0)));
  CHECK(std::is_sorted(s.sorted.begin(), s.sorted.end()));
  CHECK(s.skew_proxy > 0.0);

  CompensatedSum cs;
  cs.add(1e16);
  cs.add(1.0);
  cs.add(-1e16);
  CHECK(cs.value() == 1.0);
}

TEST_CASE("standard error scales as n^-1/2") {
  const auto a = summarize(normals(10000, 1));
  const auto b = summarize(normals(40000, 2));
  const double ratio = b.standard_error_mean / a.standard_error_mean;
  CHECK(ratio >= 0.45);
  CHECK(ratio <= 0.55);
  const auto m = raw_moment(normals(10000, 1), 1);
  CHECK(m.standard_error == Approx(a.standard_error_mean));
}

TEST_CASE("Kolmogorov distribution") {
  CHECK(kolmogorov_q(0.0) == 1.0);
  CHECK(kolmogorov_q(1.3581) == Approx(0.05).epsilon(1e-3));
  CHECK(kolmogorov_q(1.6276) == Approx(0.01).epsilon(2e-3));
  CHECK(kolmogorov_q(0.5) == Approx(0.9639).epsilon(1e-3));
  // the two series meet smoothly
  CHECK(kolmogorov_q(1.18 - 1e-9) == Approx(kolmogorov_q(1.18 + 1e-9)).epsilon(1e-8));
  for (double l = 0.05; l < 4.0; l += 0.05) CHECK(kolmogorov_q(l) >= kolmogorov_q(l + 0.05));
}

TEST_CASE("two-sample KS examples") {
  const auto a = sorted(normals(1000, 3));
  const auto same = ks_two_sample(a, a);
  CHECK(same.distance == 0.0);
  CHECK(same.p_value == 1.0);
  const std::vector<double> zeros(1000, 0.0), ones(1000, 1.0);
  CHECK(ks_two_sample(zeros, ones).distance == 1.0);
  const auto r = ks_two_sample(a, sorted(normals(500, 4)));
  CHECK(r.distance >= 0.0);
  CHECK(r.distance <= 1.0);
  CHECK(r.p_value >= 0.0);
  CHECK(r.p_value <= 1.0);
  CHECK_THROWS_AS(ks_two_sample(std::vector<double>{}, a), std::invalid_argument);
}

TEST_CASE("two-sample KS p-values are calibrated") {
  int small = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto r = ks_two_sample(sorted(normals(10000, 100 + 2 * i)), sorted(normals(10000, 101 + 2 * i)));
    if (r.p_value < 0.05) ++small;
  }
  CHECK(small >= 4);
  CHECK(small <= 18);
}

TEST_CASE("one-sample KS") {
  const auto x = sorted(normals(20000, 5));
  const auto good = ks_one_sample(x, normal_cdf);
  CHECK(good.p_value > 0.01);
  const auto bad = ks_one_sample(x, [](double v) { return normal_cdf(v / 1.2); });
  CHECK(bad.p_value < 1e-6);
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.96) == Approx(0.975).epsilon(1e-4));
}

TEST_CASE("ECF test") {
  const std::vector<double> z{0.5, 1.0, 2.0};
  int big = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto x = normals(10000, 1000 + i);
    if (ecf_test(x, [](double s) { return stable_log_cf(2.0, s); }, z) >= 4.0) ++big;
  }
  CHECK(big <= 1);

  const std::vector<double> zeros(1000, 0.0);
  CHECK(ecf_test(zeros, [](double) { return std::complex<double>(0.0, 0.0); }, z) == 0.0);

  const double one[] = {1.0};
  const auto g = normals(100000, 6);
  CHECK(ecf_test(g, [](double s) { return stable_log_cf(1.5, s); }, one) > 10.0);
}

TEST_CASE("convergence sweep") {
  ExperimentConfig cfg;
  cfg.law = InterArrivalLaw::pareto(0.5, 1.0);
  cfg.response = ResponseFunction::indicator(1.0);
  cfg.t_ladder = {1e4};
  cfg.u_points = {1.0};
  cfg.replicates = 10000;
  cfg.grid_points = 33;
  cfg.limit_samples = 2000;
  cfg.seed = 77;
  cfg.threads = 1;
  const auto report = convergence_sweep(cfg);
  REQUIRE(report.entries.size() == 1);
  CHECK(report.case_id == "A4");
  const auto& checks = report.entries.front().checks;
  const auto m1 = std::find_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.name == "moment_1"; });
  REQUIRE(m1 != checks.end());
  CHECK(m1->statistic < 3.0);
  for (const auto& c : checks) {
    if (c.unit == "ks_distance") {
      CHECK(c.statistic >= 0.0);
      CHECK(c.statistic <= 1.0);
      CHECK(c.aux >= 0.0);
      CHECK(c.aux <= 1.0);
    }
  }
  CHECK(report.samples.size() == 1);
  CHECK(report.samples[0][0].size() == 10000);
}

TEST_CASE("sweep output does not depend on the worker count") {
  ExperimentConfig cfg;
  cfg.law = InterArrivalLaw::gamma(2.0, 2.0);
  cfg.response = ResponseFunction::power(1.0);
  cfg.t_ladder = {50.0, 500.0};
  cfg.replicates = 2000;
  cfg.limit_samples = 1000;
  cfg.seed = 99;
  cfg.resolved = to_json(cfg);
  cfg.threads = 1;
  const auto a = report_to_json(convergence_sweep(cfg), cfg).dump();
  cfg.threads = 4;
  const auto b = report_to_json(convergence_sweep(cfg), cfg).dump();
  CHECK(a == b);
  cfg.seed = 100;
  cfg.resolved = to_json(cfg);
  CHECK(report_to_json(convergence_sweep(cfg), cfg).dump() != a);
}

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

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "shotnoise/config.hpp"
#include "shotnoise/renewal.hpp"

namespace shotnoise {

/// Neumaier-compensated running sum; the result depends only on the order
/// of additions.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct SampleSummary {
  long n = 0;
  double mean = 0.0;
  double variance = 0.0;
  /// Standardized third central moment.
  double skew_proxy = 0.0;
  double standard_error_mean = 0.0;
  std::vector<double> sorted;
};

SampleSummary summarize(std::span<const double> sample);

/// Mean of x^k with its Monte Carlo standard error.
struct MomentEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

MomentEstimate raw_moment(std::span<const double> sample, int k);

struct KsResult {
  double distance = 0.0;
  double p_value = 1.0;
};

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

/// Two-sample KS on sorted samples; p from the asymptotic Kolmogorov law with
/// effective size nm/(n+m).
KsResult ks_two_sample(std::span<const double> a_sorted, std::span<const double> b_sorted);

/// One-sample KS of a sorted sample against a continuous CDF.
KsResult ks_one_sample(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// Standard normal CDF.
double normal_cdf(double x);

using LogCf = std::function<std::complex<double>(double)>;

/*!
 * \brief Largest deviation, in Monte Carlo standard errors, between the
 * empirical characteristic function of `sample` and exp(log_cf(z)).
 *
 * Real and imaginary parts are compared separately at each z of the grid.
 */
double ecf_test(std::span<const double> sample, const LogCf& log_cf,
                std::span<const double> z_grid);

/// One comparison inside a convergence report.
struct CheckResult {
  std::string name;
  double u = 0.0;
  double statistic = 0.0;
  double threshold = 0.0;
  /// "ks_distance", "p_value", "se_units".
  std::string unit;
  /// Auxiliary value, e.g. the KS p-value next to a KS distance.
  double aux = 0.0;
  bool pass = false;
  bool informational = false;
};

struct ConvergenceEntry {
  double t = 0.0;
  std::vector<CheckResult> checks;
  bool verdict = false;
};

struct ConvergenceReport {
  std::string case_id;
  bool experimental = false;
  std::uint64_t seed = 0;
  std::vector<ConvergenceEntry> entries;
  /// Verdict of the largest t (informational for experimental cases).
  bool pass = false;
  /// Normalized draws X_t(u) per t and u, kept for plots and raw dumps.
  std::vector<std::vector<std::vector<double>>> samples;
  /// Draws from the limit marginal at each u (two-sample comparisons).
  std::vector<std::vector<double>> limit_samples;
};

/*!
 * \brief Marginal convergence check along the t ladder.
 *
 * For every t, simulates `replicates` renewal paths, evaluates X_t(u) at the
 * u points and compares each marginal with the limit:
 *  - A1/A2: one-sample KS against N(0, u^{2beta+1}/(2beta+1)), variance and
 *    (for two u points) covariance in standard-error units
 *  - A3: ECF against the limit characteristic function (KS informational)
 *  - A4: first two moments against the fractional inverse-subordinator
 *    moment formula (KS against simulated limit draws informational)
 *  - A5: everything informational
 * Replicate r at ladder index i uses stream (seed, r) split by i, so the
 * report is bit-identical for any thread count.
 */
ConvergenceReport convergence_sweep(const ExperimentConfig& config);

/// Thresholds used by convergence_sweep.
/// A KS check passes when p > ks_p or the distance is below ks_distance:
/// with many replicates the p-value alone also flags the O(t^{-1/2}) bias of
/// a finite t, which the desk-scale tolerance absorbs.
struct SweepThresholds {
  double ks_p = 0.01;
  double ks_distance = 0.03;
  double moment_se = 4.0;
  double ecf_se = 5.0;
};

inline constexpr SweepThresholds kSweepThresholds{};

}  // namespace shotnoise

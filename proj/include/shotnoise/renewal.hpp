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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shotnoise/response.hpp"
#include "shotnoise/rng.hpp"

namespace shotnoise {

/// Raised when a simulation cannot produce what was asked of it
/// (insufficient horizon, exhausted subordinator grid, no convergence).
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*!
 * \brief Law of the inter-arrival time xi.
 *
 * Pareto(alpha, xm):        P{xi > x} = (x / xm)^-alpha, x >= xm
 * ParetoLog(alpha, xm, p):  P{xi > x} = (x / xm)^-alpha (1 + ln(x / xm))^p
 */
class InterArrivalLaw {
 public:
  enum class Family { Exponential, Deterministic, Gamma, Pareto, ParetoLog };

  static InterArrivalLaw exponential(double rate);
  static InterArrivalLaw deterministic(double a);
  static InterArrivalLaw gamma(double shape, double rate);
  static InterArrivalLaw pareto(double alpha, double xm);
  static InterArrivalLaw pareto_log(double alpha, double xm, double p);

  Family family() const noexcept { return family_; }
  /// Tail index; +inf for the light-tailed families.
  double alpha() const noexcept { return alpha_; }
  /// E xi when finite.
  std::optional<double> mean() const noexcept { return mu_; }
  /// Var xi when finite.
  std::optional<double> variance() const noexcept { return sigma2_; }

  double xm() const noexcept { return p1_; }
  double log_power() const noexcept { return p2_; }
  double rate() const noexcept { return p1_; }
  double shape() const noexcept { return p0_; }
  double location() const noexcept { return p0_; }

  /// P{xi > x}.
  double tail(double x) const;
  /// l(x) = x^alpha P{xi > x} (heavy-tailed families).
  double tail_slowly_varying(double x) const;
  /// int_[0,x] y^2 P{xi in dy}.
  double truncated_second_moment(double x) const;
  /// m(t) = int_0^t P{xi > y} dy.
  double integrated_tail(double t) const;

  double sample(RngStream& rng) const;

  bool heavy_tailed() const noexcept {
    return family_ == Family::Pareto || family_ == Family::ParetoLog;
  }

  std::string describe() const;

 private:
  InterArrivalLaw() = default;
  void compute_moments();

  Family family_ = Family::Exponential;
  double p0_ = 0.0;  // gamma shape or deterministic location; unused for Pareto
  double p1_ = 0.0;  // rate or xm
  double p2_ = 0.0;  // log power
  double alpha_ = 0.0;
  std::optional<double> mu_;
  std::optional<double> sigma2_;
};

/// Jump times S_0 = 0 < S_1 < ... covering [0, horizon] plus one overshoot.
struct RenewalPath {
  double horizon = 0.0;
  std::vector<double> jumps;
};

RenewalPath sample_renewal_path(const InterArrivalLaw& law, double horizon,
                                RngStream& rng);

/// N(t) = #{k : S_k <= t}; 0 for t < 0. Throws SimulationError past the horizon.
long count_at(const RenewalPath& path, double t);

/// c(t) solving t l(c) / c^alpha = 1 for alpha in (0, 2).
double solve_scale_c(const InterArrivalLaw& law, double t);

/// c(t) solving t l2(c) / c^2 = 1 with l2 the truncated second moment.
double solve_scale_c2(const InterArrivalLaw& law, double t);

enum class LimitCase { A1, A2, A3, A4, A5 };

std::string to_string(LimitCase c);
LimitCase limit_case_from_string(const std::string& s);

/*!
 * \brief Normalization plan for one case of the shot noise limit theorem.
 *
 * The prelimit process is (X(ut) - center_fn(t, u)) / scale_fn(t).
 */
struct LimitCaseSpec {
  LimitCase limit_case = LimitCase::A1;
  double alpha_limit = 2.0;
  double beta = 0.0;
  /// A5 is a conjecture; its verdicts are informational only.
  bool experimental = false;
  std::function<double(double)> scale_fn;
  std::function<double(double, double)> center_fn;
  std::function<double(double)> m_fn;
};

LimitCaseSpec build_case_spec(const InterArrivalLaw& law, const ResponseFunction& h);

/// As build_case_spec, but insists on `forced` (throws if the law does not fit).
LimitCaseSpec build_case_spec(const InterArrivalLaw& law, const ResponseFunction& h,
                              LimitCase forced);

}  // namespace shotnoise

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

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shotnoise {

/// Slowly varying factor: either a positive constant or c * (1 + ln(1 + x))^p.
struct SlowlyVarying {
  enum class Form { Constant, LogPower };

  Form form = Form::Constant;
  double c = 1.0;
  double p = 0.0;

  static SlowlyVarying constant(double c);
  static SlowlyVarying log_power(double c, double p);

  double operator()(double x) const;
};

/// Nonincreasing integrable left tail htilde(y) = h(-y), y > 0.
struct LeftTail {
  enum class Decay { Exponential, Power };

  Decay decay = Decay::Exponential;
  double amplitude = 1.0;
  /// Exponential: rate. Power: exponent gamma > 1 of (1 + y)^-gamma.
  double rate = 1.0;

  static LeftTail exponential(double amplitude, double rate);
  static LeftTail power(double amplitude, double exponent);

  double operator()(double y) const;
  /// Integral over [0, inf).
  double integral() const;
  /// Point beyond which the remaining mass is below rel * integral().
  double truncation_point(double rel = 1e-12) const;
};

enum class ResponseKind { Power, BoundedLimit, StepCdf, TwoSided, Smoothed };

std::string to_string(ResponseKind kind);

/*!
 * \brief Response function h of a shot noise process.
 *
 * Built-in families, all regularly varying at infinity with index beta:
 *  - Power:        h(x) = x^beta * l(x), x >= 0
 *  - BoundedLimit: h(x) = L * (1 - exp(-rate * x)), beta = 0, l == L
 *  - StepCdf:      h(x) = sum_i w_i 1{x >= a_i}, beta = 0, l == sum w_i
 *  - TwoSided:     a one-sided right part plus h(-y) = htilde(y) for y > 0
 *  - Smoothed:     the exponential smoothing h* of another response
 *
 * One-sided functions vanish on x < 0. Values are immutable; copies share
 * state and are safe to use from several threads.
 */
class ResponseFunction {
 public:
  static ResponseFunction power(double beta,
                                SlowlyVarying sv = SlowlyVarying::constant(1.0));
  /// h = c * 1_{[0, inf)}.
  static ResponseFunction indicator(double c = 1.0);
  static ResponseFunction bounded_limit(double limit, double rate);
  static ResponseFunction step_cdf(std::vector<double> points,
                                   std::vector<double> weights);
  static ResponseFunction two_sided(const ResponseFunction& right,
                                    LeftTail left);

  ResponseKind kind() const noexcept { return kind_; }
  double beta() const noexcept { return beta_; }
  /// Asymptotic slowly varying factor l* with h(x) ~ x^beta l*(x).
  SlowlyVarying slowly_varying() const noexcept { return sv_; }
  /// h is nondecreasing on [cutoff, inf).
  double cutoff() const noexcept { return cutoff_; }
  const std::optional<LeftTail>& left_tail() const noexcept { return left_; }
  bool two_sided() const noexcept { return left_.has_value(); }

  /// One-sided part (the function itself unless kind() is TwoSided).
  const ResponseFunction& right_part() const;

  /// h(x); one-sided functions return 0 for x < 0.
  double operator()(double x) const;

  /// x^beta * l*(x).
  double asymptotic(double x) const;

  /// True when h is a right-continuous step function on [0, inf).
  bool piecewise_constant() const noexcept;
  /// Step locations and heights (StepCdf and indicator Power only).
  const std::vector<double>& step_points() const noexcept { return points_; }
  const std::vector<double>& step_weights() const noexcept { return weights_; }

  /// Breakpoints of h on (0, inf) where it is not smooth.
  std::vector<double> kinks() const;

  std::string describe() const;

  // Family parameters, for serialization.
  double limit() const noexcept { return limit_; }
  double rate() const noexcept { return rate_; }

 private:
  ResponseFunction() = default;
  double eval_right(double x) const;

  ResponseKind kind_ = ResponseKind::Power;
  double beta_ = 0.0;
  SlowlyVarying sv_;
  double cutoff_ = 0.0;
  double limit_ = 0.0;
  double rate_ = 0.0;
  std::vector<double> points_;
  std::vector<double> weights_;
  std::optional<LeftTail> left_;
  std::shared_ptr<const ResponseFunction> base_;

  friend ResponseFunction smooth_response(const ResponseFunction& h);
};

/// h(x).
double eval_response(const ResponseFunction& h, double x);

/*!
 * \brief Exponential smoothing h*(t) = E h((t - theta)^+), theta ~ Exp(1).
 *
 * Evaluated as h*(t) = h(0) e^{-t} + int_0^t h(y) e^{y - t} dy, accumulating
 * e^{y - t} h(y) directly so that no e^y term is ever formed.
 */
ResponseFunction smooth_response(const ResponseFunction& h);

/// int_0^T h(y) dy (right part only for two-sided h).
double centering_integral(const ResponseFunction& h, double T);

}  // namespace shotnoise

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

#include "shotnoise/response.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "shotnoise/quadrature.hpp"

namespace shotnoise {

namespace {

// e^{-60} h(t) is far below double resolution of h*(t).
constexpr double kSmoothingWindow = 60.0;
constexpr double kQuadTol = 1e-13;

double integrate_with_breaks(const ResponseFunction& h, double a, double b,
                             double rel_tol) {
  std::vector<double> cuts{a};
  for (double k : h.kinks()) {
    if (k > a && k < b) cuts.push_back(k);
  }
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    total += adaptive_simpson(
        [&](double y) {
          // Evaluate at the panel-interior limit so the step at `hi` is not
          // picked up at the right endpoint.
          const double yy = std::min(std::max(y, lo), std::nextafter(hi, lo));
          return h(yy);
        },
        lo, hi, rel_tol);
  }
  return total;
}

}  // namespace

SlowlyVarying SlowlyVarying::constant(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("slowly varying constant must be > 0");
  return {Form::Constant, c, 0.0};
}

SlowlyVarying SlowlyVarying::log_power(double c, double p) {
  if (!(c > 0.0)) throw std::invalid_argument("slowly varying constant must be > 0");
  if (!std::isfinite(p)) throw std::invalid_argument("log-power exponent must be finite");
  return {Form::LogPower, c, p};
}

double SlowlyVarying::operator()(double x) const {
  if (form == Form::Constant) return c;
  return c * std::pow(1.0 + std::log1p(std::max(x, 0.0)), p);
}

LeftTail LeftTail::exponential(double amplitude, double rate) {
  if (!(amplitude >= 0.0) || !(rate > 0.0)) {
    throw std::invalid_argument("exponential left tail needs amplitude >= 0, rate > 0");
  }
  return {Decay::Exponential, amplitude, rate};
}

LeftTail LeftTail::power(double amplitude, double exponent) {
  if (!(amplitude >= 0.0) || !(exponent > 1.0)) {
    throw std::invalid_argument("power left tail needs amplitude >= 0, exponent > 1");
  }
  LeftTail tail{Decay::Power, amplitude, exponent};
  if (tail.truncation_point() > 1e7) {
    throw std::invalid_argument(
        "power left tail decays too slowly to truncate within a simulated horizon");
  }
  return tail;
}

double LeftTail::operator()(double y) const {
  if (y < 0.0) return 0.0;
  if (decay == Decay::Exponential) return amplitude * std::exp(-rate * y);
  return amplitude * std::pow(1.0 + y, -rate);
}

double LeftTail::integral() const {
  if (decay == Decay::Exponential) return amplitude / rate;
  return amplitude / (rate - 1.0);
}

double LeftTail::truncation_point(double rel) const {
  if (decay == Decay::Exponential) return -std::log(rel) / rate;
  // int_y^inf (1+s)^-g ds / int_0^inf = (1+y)^{1-g}
  return std::pow(rel, 1.0 / (1.0 - rate)) - 1.0;
}

std::string to_string(ResponseKind kind) {
  switch (kind) {
    case ResponseKind::Power: return "power";
    case ResponseKind::BoundedLimit: return "bounded_limit";
    case ResponseKind::StepCdf: return "step_cdf";
    case ResponseKind::TwoSided: return "two_sided";
    case ResponseKind::Smoothed: return "smoothed";
  }
  return "unknown";
}

ResponseFunction ResponseFunction::power(double beta, SlowlyVarying sv) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("power response needs finite beta >= 0");
  }
  ResponseFunction h;
  h.kind_ = ResponseKind::Power;
  h.beta_ = beta;
  h.sv_ = sv;
  if (sv.form == SlowlyVarying::Form::LogPower && sv.p < 0.0) {
    if (beta == 0.0) {
      throw std::invalid_argument(
          "power response with beta = 0 and negative log power is decreasing");
    }
    // beta (1 + ln(1 + x)) >= -p makes d/dx log h >= 0.
    h.cutoff_ = std::max(0.0, std::exp(-sv.p / beta - 1.0) - 1.0);
  }
  if (beta == 0.0 && sv.form == SlowlyVarying::Form::Constant) {
    h.points_ = {0.0};
    h.weights_ = {sv.c};
  }
  return h;
}

ResponseFunction ResponseFunction::indicator(double c) {
  return power(0.0, SlowlyVarying::constant(c));
}

ResponseFunction ResponseFunction::bounded_limit(double limit, double rate) {
  if (!(limit > 0.0) || !(rate > 0.0)) {
    throw std::invalid_argument("bounded response needs limit > 0 and rate > 0");
  }
  ResponseFunction h;
  h.kind_ = ResponseKind::BoundedLimit;
  h.limit_ = limit;
  h.rate_ = rate;
  h.sv_ = SlowlyVarying::constant(limit);
  return h;
}

ResponseFunction ResponseFunction::step_cdf(std::vector<double> points,
                                            std::vector<double> weights) {
  if (points.size() != weights.size()) {
    throw std::invalid_argument("step response: points and weights differ in length");
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return points[a] < points[b]; });
  ResponseFunction h;
  h.kind_ = ResponseKind::StepCdf;
  double total = 0.0;
  for (auto i : order) {
    if (!(points[i] >= 0.0) || !(weights[i] >= 0.0)) {
      throw std::invalid_argument("step response needs points >= 0 and weights >= 0");
    }
    h.points_.push_back(points[i]);
    h.weights_.push_back(weights[i]);
    total += weights[i];
  }
  h.limit_ = total;
  // l* must be positive; an all-zero step function is h == 0 with no
  // regular variation, which is still useful as a degenerate response.
  h.sv_ = total > 0.0 ? SlowlyVarying::constant(total)
                      : SlowlyVarying{SlowlyVarying::Form::Constant, 0.0, 0.0};
  return h;
}

ResponseFunction ResponseFunction::two_sided(const ResponseFunction& right,
                                             LeftTail left) {
  if (right.two_sided() || right.kind_ == ResponseKind::TwoSided) {
    throw std::invalid_argument("two-sided response needs a one-sided right part");
  }
  ResponseFunction h;
  h.kind_ = ResponseKind::TwoSided;
  h.beta_ = right.beta_;
  h.sv_ = right.sv_;
  h.cutoff_ = right.cutoff_;
  h.left_ = left;
  h.base_ = std::make_shared<const ResponseFunction>(right);
  return h;
}

const ResponseFunction& ResponseFunction::right_part() const {
  if (kind_ == ResponseKind::TwoSided) return *base_;
  return *this;
}

double ResponseFunction::eval_right(double x) const {
  switch (kind_) {
    case ResponseKind::Power:
      if (beta_ == 0.0) return sv_(x);
      return std::pow(x, beta_) * sv_(x);
    case ResponseKind::BoundedLimit:
      return -limit_ * std::expm1(-rate_ * x);
    case ResponseKind::StepCdf: {
      double sum = 0.0;
      for (std::size_t i = 0; i < points_.size() && points_[i] <= x; ++i) {
        sum += weights_[i];
      }
      return sum;
    }
    case ResponseKind::TwoSided:
      return (*base_)(x);
    case ResponseKind::Smoothed: {
      const ResponseFunction& f = *base_;
      const double lo = std::max(0.0, x - kSmoothingWindow);
      double acc = lo == 0.0 ? f(0.0) * std::exp(-x) : 0.0;
      std::vector<double> cuts{lo};
      for (double k : f.kinks()) {
        if (k > lo && k < x) cuts.push_back(k);
      }
      cuts.push_back(x);
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        if (f.piecewise_constant()) {
          acc += f(a) * (std::exp(b - x) - std::exp(a - x));
          continue;
        }
        acc += adaptive_simpson([&](double y) { return f(y) * std::exp(y - x); },
                                a, b, kQuadTol);
      }
      return acc;
    }
  }
  return 0.0;
}

double ResponseFunction::operator()(double x) const {
  if (x < 0.0) {
    if (left_) return (*left_)(-x);
    return 0.0;
  }
  return eval_right(x);
}

double ResponseFunction::asymptotic(double x) const {
  return std::pow(x, beta_) * sv_(x);
}

bool ResponseFunction::piecewise_constant() const noexcept {
  return (kind_ == ResponseKind::StepCdf) ||
         (kind_ == ResponseKind::Power && beta_ == 0.0 &&
          sv_.form == SlowlyVarying::Form::Constant);
}

std::vector<double> ResponseFunction::kinks() const {
  switch (kind_) {
    case ResponseKind::StepCdf: {
      std::vector<double> out;
      for (double p : points_) {
        if (p > 0.0) out.push_back(p);
      }
      return out;
    }
    case ResponseKind::TwoSided:
      return base_->kinks();
    default:
      return {};
  }
}

std::string ResponseFunction::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(beta=" << beta_;
  if (kind_ == ResponseKind::BoundedLimit) os << ", limit=" << limit_ << ", rate=" << rate_;
  if (sv_.form == SlowlyVarying::Form::LogPower) os << ", l=log_power(" << sv_.c << "," << sv_.p << ")";
  else os << ", l=" << sv_.c;
  if (left_) {
    os << ", left="
       << (left_->decay == LeftTail::Decay::Exponential ? "exp(" : "power(")
       << left_->amplitude << "," << left_->rate << ")";
  }
  os << ")";
  return os.str();
}

double eval_response(const ResponseFunction& h, double x) { return h(x); }

ResponseFunction smooth_response(const ResponseFunction& h) {
  if (h.two_sided()) {
    throw std::invalid_argument("smoothing is defined for one-sided responses only");
  }
  if (!std::isfinite(h(0.0))) {
    throw std::invalid_argument("smoothing needs a finite h(0)");
  }
  ResponseFunction out;
  out.kind_ = ResponseKind::Smoothed;
  out.beta_ = h.beta_;
  out.sv_ = h.sv_;
  out.base_ = std::make_shared<const ResponseFunction>(h);
  return out;
}

double centering_integral(const ResponseFunction& h, double T) {
  if (!(T >= 0.0)) throw std::invalid_argument("centering integral needs T >= 0");
  if (T == 0.0) return 0.0;
  const ResponseFunction& f = h.right_part();
  switch (f.kind()) {
    case ResponseKind::Power: {
      const double b1 = f.beta() + 1.0;
      const SlowlyVarying sv = f.slowly_varying();
      if (sv.form == SlowlyVarying::Form::Constant) {
        return sv.c * std::pow(T, b1) / b1;
      }
      // y = T w^{1/(beta+1)} turns y^beta dy into T^{beta+1}/(beta+1) dw.
      const double inner = adaptive_simpson(
          [&](double w) { return sv(T * std::pow(w, 1.0 / b1)); }, 0.0, 1.0, 1e-12);
      return std::pow(T, b1) / b1 * inner;
    }
    case ResponseKind::BoundedLimit:
      return f.limit() * (T + std::expm1(-f.rate() * T) / f.rate());
    case ResponseKind::StepCdf: {
      double sum = 0.0;
      for (std::size_t i = 0; i < f.step_points().size(); ++i) {
        sum += f.step_weights()[i] * std::max(0.0, T - f.step_points()[i]);
      }
      return sum;
    }
    default:
      return integrate_with_breaks(f, 0.0, T, 1e-11);
  }
}

}  // namespace shotnoise

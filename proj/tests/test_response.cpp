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

#include <cmath>
#include <vector>

#include "shotnoise/response.hpp"

using namespace shotnoise;
using doctest::Approx;

namespace {

// Midpoint rule with a fixed number of panels.
template <typename F>
double midpoint(F&& f, double a, double b, long panels) {
  const double h = (b - a) / static_cast<double>(panels);
  double s = 0.0;
  for (long i = 0; i < panels; ++i) s += f(a + (static_cast<double>(i) + 0.5) * h);
  return s * h;
}

}  // namespace

TEST_CASE("eval_response examples") {
  const auto id = ResponseFunction::power(1.0);
  CHECK(eval_response(id, 2.0) == 2.0);

  const std::vector<ResponseFunction> one_sided{
      id, ResponseFunction::indicator(2.0), ResponseFunction::bounded_limit(3.0, 1.0),
      ResponseFunction::step_cdf({0.0, 1.0}, {0.5, 0.5}),
      ResponseFunction::power(0.5, SlowlyVarying::log_power(1.0, 2.0))};
  for (const auto& h : one_sided) CHECK(eval_response(h, -1.0) == 0.0);

  const auto bounded = ResponseFunction::bounded_limit(3.0, 1.0);
  CHECK(bounded.beta() == 0.0);
  CHECK(eval_response(bounded, 50.0) == Approx(3.0).epsilon(1e-12));
  CHECK(eval_response(bounded, 10.0) < eval_response(bounded, 20.0));
  CHECK(bounded.asymptotic(1e6) == Approx(3.0));
}

TEST_CASE("regular variation of built-in responses") {
  const std::vector<double> betas{0.0, 0.5, 1.0, 2.0};
  for (double beta : betas) {
    const auto h = ResponseFunction::power(beta, SlowlyVarying::constant(1.5));
    for (double lambda : {2.0, 10.0}) {
      CHECK(h(lambda * 1e6) / h(1e6) == Approx(std::pow(lambda, beta)).epsilon(0.01));
    }
  }
  const auto logp = ResponseFunction::power(0.5, SlowlyVarying::log_power(2.0, -1.0));
  for (double x = 1e2; x <= 1e12; x *= 10.0) {
    CHECK(logp(x) / logp.asymptotic(x) == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("eventual monotonicity past the cutoff") {
  const std::vector<ResponseFunction> hs{
      ResponseFunction::power(0.5, SlowlyVarying::log_power(1.0, -3.0)),
      ResponseFunction::power(1.0, SlowlyVarying::log_power(1.0, 2.0)),
      ResponseFunction::bounded_limit(2.0, 0.5), ResponseFunction::step_cdf({0.5, 2.0}, {1.0, 3.0})};
  for (const auto& h : hs) {
    double prev = h(h.cutoff());
    for (double x = h.cutoff(); x < 1e4; x = x * 1.1 + 0.01) {
      CHECK(h(x) >= prev);
      prev = h(x);
    }
  }
  CHECK(ResponseFunction::power(0.5, SlowlyVarying::log_power(1.0, -3.0)).cutoff() > 0.0);
  CHECK(ResponseFunction::power(1.0).cutoff() == 0.0);
}

TEST_CASE("constructor preconditions") {
  CHECK_THROWS_AS(ResponseFunction::power(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(ResponseFunction::power(1.0, SlowlyVarying::constant(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(ResponseFunction::bounded_limit(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ResponseFunction::step_cdf({0.0, 1.0}, {1.0, -1.0}), std::invalid_argument);
  CHECK(ResponseFunction::step_cdf({}, {})(5.0) == 0.0);
  CHECK_THROWS_AS(ResponseFunction::step_cdf({0.0, 1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(LeftTail::exponential(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(LeftTail::power(1.0, 1.0), std::invalid_argument);
  const auto two = ResponseFunction::two_sided(ResponseFunction::power(1.0), LeftTail::exponential(1.0, 1.0));
  CHECK_THROWS_AS(ResponseFunction::two_sided(two, LeftTail::exponential(1.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("two-sided responses") {
  const auto h = ResponseFunction::two_sided(ResponseFunction::power(1.0), LeftTail::exponential(1.0, 1.0));
  CHECK(h.two_sided());
  CHECK(h(2.0) == 2.0);
  CHECK(h(-1.0) == Approx(std::exp(-1.0)));
  CHECK(h(-3.0) < h(-1.0));
  const LeftTail tail = *h.left_tail();
  CHECK(tail.integral() == Approx(1.0));
  const double cut = tail.truncation_point();
  CHECK(std::exp(-cut) == Approx(1e-12).epsilon(1e-6));

  const auto p = LeftTail::power(2.0, 3.0);
  CHECK(p.integral() == Approx(midpoint([&](double y) { return p(y); }, 0.0, 1e4, 2000000)).epsilon(1e-5));
}

TEST_CASE("smoothing: closed form for the identity") {
  const auto h = ResponseFunction::power(1.0);
  const auto hs = smooth_response(h);
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    CHECK(std::abs(hs(t) - (t - 1.0 + std::exp(-t))) < 1e-9);
  }
  const double big = 1e6;
  const double ratio = hs(big) / h(big);
  CHECK(ratio <= 1.0);
  CHECK(ratio >= 1.0 - 1e-5);
}

TEST_CASE("smoothing: zero at zero, domination, continuity") {
  const std::vector<ResponseFunction> hs{
      ResponseFunction::power(1.0), ResponseFunction::power(0.5), ResponseFunction::power(2.0),
      ResponseFunction::bounded_limit(2.0, 1.0),
      ResponseFunction::power(1.0, SlowlyVarying::log_power(1.0, 1.0)),
      ResponseFunction::step_cdf({0.0, 1.0}, {0.0, 1.0})};
  for (const auto& h : hs) {
    const auto s = smooth_response(h);
    CHECK(s(0.0) == Approx(h(0.0)).epsilon(1e-12));
    double prev = s(0.0);
    for (double t = 0.05; t < 200.0; t *= 1.3) {
      CHECK(s(t) <= h(t) * (1.0 + 1e-12) + 1e-12);
      CHECK(std::abs(s(t) - prev) < 1e3 * t);
      prev = s(t);
    }
  }
  // A step at 1: h*(t) = 1 - e^{-(t-1)} beyond 1.
  const auto step = smooth_response(ResponseFunction::step_cdf({1.0}, {1.0}));
  CHECK(step(3.0) == Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
  CHECK(step(0.5) == 0.0);
  CHECK(smooth_response(step).kind() == ResponseKind::Smoothed);

  CHECK_THROWS_AS(smooth_response(ResponseFunction::two_sided(ResponseFunction::power(1.0),
                                                              LeftTail::exponential(1.0, 1.0))),
                  std::invalid_argument);
}

TEST_CASE("smoothing integral grows like h(t)") {
  // beta = 0 uses a bounded response with h(0) = 0, as the smoothing lemma needs.
  std::vector<ResponseFunction> hs{ResponseFunction::bounded_limit(1.0, 1.0),
                                   ResponseFunction::power(0.5), ResponseFunction::power(1.0),
                                   ResponseFunction::power(2.0)};
  for (const auto& h : hs) {
    const auto s = smooth_response(h);
    const double t = 1e4;
    const double diff = centering_integral(h, t) - centering_integral(s, t);
    CHECK(diff / h(t) == Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("centering_integral examples") {
  CHECK(centering_integral(ResponseFunction::indicator(1.0), 5.0) == Approx(5.0).epsilon(1e-14));
  CHECK(centering_integral(ResponseFunction::power(2.0), 3.0) == Approx(9.0).epsilon(1e-14));
  CHECK(centering_integral(ResponseFunction::power(1.0), 0.0) == 0.0);

  const auto h = ResponseFunction::power(0.5, SlowlyVarying::log_power(1.0, 1.0));
  const double oracle = midpoint([&](double y) { return h(y); }, 0.0, 10.0, 1000000);
  CHECK(centering_integral(h, 10.0) == Approx(oracle).epsilon(1e-6));

  const auto b = ResponseFunction::bounded_limit(3.0, 2.0);
  CHECK(centering_integral(b, 7.0) ==
        Approx(midpoint([&](double y) { return b(y); }, 0.0, 7.0, 1000000)).epsilon(1e-9));
  const auto st = ResponseFunction::step_cdf({0.5, 2.0}, {1.0, 3.0});
  CHECK(centering_integral(st, 4.0) == Approx(1.0 * 3.5 + 3.0 * 2.0));
}

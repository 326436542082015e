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

#include "shotnoise/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "shotnoise/quadrature.hpp"
#include "shotnoise/special.hpp"

namespace shotnoise {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// int_0^inf e^{-a s} (1 + s)^p ds for a > 0, or a == 0 with p < -1.
double exp_log_integral(double a, double p) {
  if (a == 0.0) return 1.0 / (-p - 1.0);
  auto f = [&](double s) { return std::exp(-a * s) * std::pow(1.0 + s, p); };
  double upper = 1.0;
  while (f(upper) > 1e-18 * f(0.0) || upper < 10.0 / a) upper *= 2.0;
  return adaptive_simpson(f, 0.0, upper, 1e-12);
}

/// int_0^L e^{b s} (1 + s)^p ds.
double exp_log_partial(double b, double p, double L) {
  if (L <= 0.0) return 0.0;
  if (b == 0.0) {
    if (p == -1.0) return std::log1p(L);
    return (std::pow(1.0 + L, p + 1.0) - 1.0) / (p + 1.0);
  }
  return adaptive_simpson([&](double s) { return std::exp(b * s) * std::pow(1.0 + s, p); },
                          0.0, L, 1e-12);
}

/// Regularized lower incomplete gamma P(k, x) via y = x w^{1/k}.
double gamma_lower_regularized(double k, double x) {
  if (x <= 0.0) return 0.0;
  const double inner = adaptive_simpson(
      [&](double w) { return std::exp(-x * std::pow(w, 1.0 / k)); }, 0.0, 1.0, 1e-12);
  return std::exp(k * std::log(x) - std::lgamma(k + 1.0)) * inner;
}

double bisect_log(const std::function<double(double)>& g, double lo, double hi,
                  const char* what) {
  // g decreasing with g(lo) > 0 > g(hi); geometric bisection.
  if (!(g(lo) > 0.0) || !(g(hi) < 0.0)) {
    throw SimulationError(std::string(what) + ": bisection bracket does not contain a root");
  }
  for (int step = 0; step < 200; ++step) {
    const double mid = std::sqrt(lo * hi);
    if (g(mid) > 0.0) lo = mid;
    else hi = mid;
    if (hi / lo - 1.0 < 1e-13) return std::sqrt(lo * hi);
  }
  throw SimulationError(std::string(what) + ": bisection did not converge in 200 steps");
}

}  // namespace

InterArrivalLaw InterArrivalLaw::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential law needs rate > 0");
  InterArrivalLaw law;
  law.family_ = Family::Exponential;
  law.p1_ = rate;
  law.compute_moments();
  return law;
}

InterArrivalLaw InterArrivalLaw::deterministic(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("deterministic law needs a > 0");
  InterArrivalLaw law;
  law.family_ = Family::Deterministic;
  law.p0_ = a;
  law.compute_moments();
  return law;
}

InterArrivalLaw InterArrivalLaw::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::invalid_argument("gamma law needs shape > 0 and rate > 0");
  }
  InterArrivalLaw law;
  law.family_ = Family::Gamma;
  law.p0_ = shape;
  law.p1_ = rate;
  law.compute_moments();
  return law;
}

InterArrivalLaw InterArrivalLaw::pareto(double alpha, double xm) {
  if (!(alpha > 0.0) || !(xm > 0.0)) {
    throw std::invalid_argument("pareto law needs alpha > 0 and xm > 0");
  }
  InterArrivalLaw law;
  law.family_ = Family::Pareto;
  law.alpha_ = alpha;
  law.p1_ = xm;
  law.compute_moments();
  return law;
}

InterArrivalLaw InterArrivalLaw::pareto_log(double alpha, double xm, double p) {
  if (!(alpha > 0.0) || !(xm > 0.0)) {
    throw std::invalid_argument("pareto_log law needs alpha > 0 and xm > 0");
  }
  if (!(p < alpha)) {
    throw std::invalid_argument("pareto_log law needs p < alpha for a decreasing tail");
  }
  InterArrivalLaw law;
  law.family_ = Family::ParetoLog;
  law.alpha_ = alpha;
  law.p1_ = xm;
  law.p2_ = p;
  law.compute_moments();
  return law;
}

void InterArrivalLaw::compute_moments() {
  switch (family_) {
    case Family::Exponential:
      alpha_ = kInf;
      mu_ = 1.0 / p1_;
      sigma2_ = 1.0 / (p1_ * p1_);
      break;
    case Family::Deterministic:
      alpha_ = kInf;
      mu_ = p0_;
      sigma2_ = 0.0;
      break;
    case Family::Gamma:
      alpha_ = kInf;
      mu_ = p0_ / p1_;
      sigma2_ = p0_ / (p1_ * p1_);
      break;
    case Family::Pareto: {
      const double a = alpha_, xm = p1_;
      if (a > 1.0) mu_ = a * xm / (a - 1.0);
      if (a > 2.0) sigma2_ = a * xm * xm / ((a - 1.0) * (a - 1.0) * (a - 2.0));
      break;
    }
    case Family::ParetoLog: {
      const double a = alpha_, xm = p1_, p = p2_;
      // x = xm e^s turns the tail integrals into int e^{(k - alpha) s} (1+s)^p ds.
      if (a > 1.0 || (a == 1.0 && p < -1.0)) {
        mu_ = xm * (1.0 + exp_log_integral(a - 1.0, p));
      }
      if (a > 2.0 || (a == 2.0 && p < -1.0)) {
        const double second = xm * xm * (1.0 + 2.0 * exp_log_integral(a - 2.0, p));
        sigma2_ = second - (*mu_) * (*mu_);
      }
      break;
    }
  }
}

double InterArrivalLaw::tail(double x) const {
  if (x < 0.0) return 1.0;
  switch (family_) {
    case Family::Exponential: return std::exp(-p1_ * x);
    case Family::Deterministic: return x < p0_ ? 1.0 : 0.0;
    case Family::Gamma: return 1.0 - gamma_lower_regularized(p0_, p1_ * x);
    case Family::Pareto: return x <= p1_ ? 1.0 : std::pow(x / p1_, -alpha_);
    case Family::ParetoLog: {
      if (x <= p1_) return 1.0;
      const double L = std::log(x / p1_);
      return std::exp(-alpha_ * L) * std::pow(1.0 + L, p2_);
    }
  }
  return 0.0;
}

double InterArrivalLaw::tail_slowly_varying(double x) const {
  if (!heavy_tailed()) throw std::invalid_argument("slowly varying tail factor needs a heavy-tailed law");
  return std::pow(x, alpha_) * tail(x);
}

double InterArrivalLaw::truncated_second_moment(double x) const {
  if (x <= 0.0) return 0.0;
  if (heavy_tailed()) {
    const double xm = p1_;
    if (x <= xm) return 0.0;
    const double p = family_ == Family::ParetoLog ? p2_ : 0.0;
    const double L = std::log(x / xm);
    // int_[0,x] y^2 dF = int_0^x 2y F(y>.) dy - x^2 P{xi > x}
    return xm * xm * (1.0 + 2.0 * exp_log_partial(2.0 - alpha_, p, L)) - x * x * tail(x);
  }
  const double integral = adaptive_simpson([&](double y) { return 2.0 * y * tail(y); },
                                           0.0, x, 1e-11);
  return integral - x * x * tail(x);
}

double InterArrivalLaw::integrated_tail(double t) const {
  if (t <= 0.0) return 0.0;
  switch (family_) {
    case Family::Exponential: return -std::expm1(-p1_ * t) / p1_;
    case Family::Deterministic: return std::min(t, p0_);
    case Family::Gamma:
      return adaptive_simpson([&](double y) { return tail(y); }, 0.0, t, 1e-10);
    case Family::Pareto:
    case Family::ParetoLog: {
      const double xm = p1_;
      if (t <= xm) return t;
      const double p = family_ == Family::ParetoLog ? p2_ : 0.0;
      return xm * (1.0 + exp_log_partial(1.0 - alpha_, p, std::log(t / xm)));
    }
  }
  return 0.0;
}

double InterArrivalLaw::sample(RngStream& rng) const {
  switch (family_) {
    case Family::Exponential: return standard_exponential(rng) / p1_;
    case Family::Deterministic: return p0_;
    case Family::Gamma: {
      std::gamma_distribution<double> dist(p0_, 1.0 / p1_);
      double x = dist(rng);
      while (!(x > 0.0)) x = dist(rng);
      return x;
    }
    case Family::Pareto: return p1_ * std::pow(uniform_open01(rng), -1.0 / alpha_);
    case Family::ParetoLog: {
      // Inverse transform: solve alpha L - p ln(1 + L) = E, E ~ Exp(1).
      const double e = standard_exponential(rng);
      const double a = alpha_, p = p2_;
      auto g = [&](double L) { return a * L - p * std::log1p(L) - e; };
      double lo = 0.0, hi = std::max(1.0, e / a);
      while (g(hi) < 0.0) hi *= 2.0;
      double L = 0.5 * (lo + hi);
      for (int it = 0; it < 100; ++it) {
        const double val = g(L);
        if (val > 0.0) hi = L;
        else lo = L;
        const double deriv = a - p / (1.0 + L);
        double next = L - val / deriv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - L) <= 1e-15 * (1.0 + L)) {
          L = next;
          break;
        }
        L = next;
      }
      return p1_ * std::exp(L);
    }
  }
  return 0.0;
}

std::string InterArrivalLaw::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::Exponential: os << "exponential(rate=" << p1_ << ")"; break;
    case Family::Deterministic: os << "deterministic(a=" << p0_ << ")"; break;
    case Family::Gamma: os << "gamma(shape=" << p0_ << ", rate=" << p1_ << ")"; break;
    case Family::Pareto: os << "pareto(alpha=" << alpha_ << ", xm=" << p1_ << ")"; break;
    case Family::ParetoLog:
      os << "pareto_log(alpha=" << alpha_ << ", xm=" << p1_ << ", p=" << p2_ << ")";
      break;
  }
  return os.str();
}

RenewalPath sample_renewal_path(const InterArrivalLaw& law, double horizon,
                                RngStream& rng) {
  if (!(horizon >= 0.0)) throw std::invalid_argument("renewal path needs horizon >= 0");
  RenewalPath path;
  path.horizon = horizon;
  if (law.mean()) {
    path.jumps.reserve(static_cast<std::size_t>(horizon / *law.mean() * 1.1) + 16);
  }
  double s = 0.0;
  path.jumps.push_back(s);
  while (s <= horizon) {
    s += law.sample(rng);
    path.jumps.push_back(s);
  }
  return path;
}

long count_at(const RenewalPath& path, double t) {
  if (t < 0.0) return 0;
  if (t > path.horizon) {
    throw SimulationError("count_at: query time beyond the simulated horizon");
  }
  return static_cast<long>(std::upper_bound(path.jumps.begin(), path.jumps.end(), t) -
                           path.jumps.begin());
}

double solve_scale_c(const InterArrivalLaw& law, double t) {
  if (!law.heavy_tailed() || !(law.alpha() > 0.0 && law.alpha() < 2.0)) {
    throw std::invalid_argument("solve_scale_c needs a heavy-tailed law with alpha in (0, 2)");
  }
  if (!(t > 0.0)) throw std::invalid_argument("solve_scale_c needs t > 0");
  const double a = law.alpha();
  const double xm = law.xm();
  if (law.family() == InterArrivalLaw::Family::Pareto) {
    // l == xm^alpha
    return xm * std::pow(t, 1.0 / a);
  }
  if (!(t > 1.0)) throw std::invalid_argument("solve_scale_c needs t > 1 for pareto_log laws");
  // t l(c) / c^alpha = t P{xi > c}
  auto g = [&](double c) { return t * law.tail(c) - 1.0; };
  const double base = xm * std::pow(t, 1.0 / a);
  // The log factor can push c(t) either way from base, so widen both ends by it.
  const double spread = std::pow(1.0 + std::log(t), std::abs(law.log_power()) / a);
  const double lo = base / (64.0 * spread);
  const double hi = 64.0 * base * spread;
  return bisect_log(g, std::max(lo, xm), hi, "solve_scale_c");
}

double solve_scale_c2(const InterArrivalLaw& law, double t) {
  if (!law.heavy_tailed() || law.alpha() != 2.0) {
    throw std::invalid_argument("solve_scale_c2 needs a heavy-tailed law with alpha = 2");
  }
  auto g = [&](double c) { return t * law.truncated_second_moment(c) / (c * c) - 1.0; };
  // l2(c) / c^2 decreases once ln(c / xm) exceeds roughly 1/2.
  double lo = law.xm() * std::exp(1.0);
  if (!(g(lo) > 0.0)) throw std::invalid_argument("solve_scale_c2: t too small");
  double hi = lo * 2.0;
  int expansions = 0;
  while (g(hi) >= 0.0) {
    hi *= 4.0;
    if (++expansions > 200) throw SimulationError("solve_scale_c2: no upper bracket");
  }
  return bisect_log(g, lo, hi, "solve_scale_c2");
}

std::string to_string(LimitCase c) {
  switch (c) {
    case LimitCase::A1: return "A1";
    case LimitCase::A2: return "A2";
    case LimitCase::A3: return "A3";
    case LimitCase::A4: return "A4";
    case LimitCase::A5: return "A5";
  }
  return "?";
}

LimitCase limit_case_from_string(const std::string& s) {
  std::string lower;
  for (char ch : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "a1") return LimitCase::A1;
  if (lower == "a2") return LimitCase::A2;
  if (lower == "a3") return LimitCase::A3;
  if (lower == "a4") return LimitCase::A4;
  if (lower == "a5") return LimitCase::A5;
  throw std::invalid_argument("unknown limit case '" + s + "'");
}

LimitCaseSpec build_case_spec(const InterArrivalLaw& law, const ResponseFunction& h) {
  LimitCaseSpec spec;
  spec.beta = h.beta();
  const auto mu = law.mean();
  const auto sigma2 = law.variance();
  auto center_mu = [h, mu](double t, double u) { return centering_integral(h, u * t) / *mu; };

  if (sigma2) {
    spec.limit_case = LimitCase::A1;
    spec.alpha_limit = 2.0;
    const double s2 = *sigma2, m = *mu;
    spec.scale_fn = [h, s2, m](double t) { return h(t) * std::sqrt(s2 / (m * m * m) * t); };
    spec.center_fn = center_mu;
    return spec;
  }
  if (!law.heavy_tailed()) {
    throw std::invalid_argument("build_case_spec: law has no finite variance and no tail index");
  }
  const double a = law.alpha();
  if (a == 2.0) {
    spec.limit_case = LimitCase::A2;
    spec.alpha_limit = 2.0;
    const double m = *mu;
    spec.scale_fn = [h, law, m](double t) {
      return h(t) * std::pow(m, -1.5) * solve_scale_c2(law, t);
    };
    spec.center_fn = center_mu;
    return spec;
  }
  if (a > 1.0 && a < 2.0) {
    spec.limit_case = LimitCase::A3;
    spec.alpha_limit = a;
    const double m = *mu;
    spec.scale_fn = [h, law, m, a](double t) {
      return h(t) * std::pow(m, -1.0 - 1.0 / a) * solve_scale_c(law, t);
    };
    spec.center_fn = center_mu;
    return spec;
  }
  if (a > 0.0 && a < 1.0) {
    spec.limit_case = LimitCase::A4;
    spec.alpha_limit = a;
    spec.scale_fn = [h, law](double t) { return h(t) / law.tail(t); };
    spec.center_fn = [](double, double) { return 0.0; };
    return spec;
  }
  if (a == 1.0) {
    spec.limit_case = LimitCase::A5;
    spec.alpha_limit = 1.0;
    spec.experimental = true;
    auto m_fn = [law](double t) { return law.integrated_tail(t); };
    spec.m_fn = m_fn;
    spec.scale_fn = [h, law, m_fn](double t) {
      const double m = m_fn(t);
      return h(t) * solve_scale_c(law, t / m) / m;
    };
    spec.center_fn = [h, law, m_fn](double t, double u) {
      const double c = solve_scale_c(law, t / m_fn(t));
      return centering_integral(h, u * t) / m_fn(c);
    };
    return spec;
  }
  throw std::invalid_argument("build_case_spec: unsupported tail index");
}

LimitCaseSpec build_case_spec(const InterArrivalLaw& law, const ResponseFunction& h,
                              LimitCase forced) {
  LimitCaseSpec spec = build_case_spec(law, h);
  if (spec.limit_case != forced) {
    throw std::invalid_argument("requested case " + to_string(forced) +
                                " does not match the law (detected " +
                                to_string(spec.limit_case) + ")");
  }
  return spec;
}

}  // namespace shotnoise

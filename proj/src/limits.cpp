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

#include "shotnoise/limits.hpp"

#include <numbers>

#include "shotnoise/renewal.hpp"
#include "shotnoise/special.hpp"

namespace shotnoise {

StableSpec StableSpec::spectrally_negative(double alpha) {
  if (alpha == 1.0) {
    throw std::invalid_argument("alpha = 1 spectrally negative sampling is not supported");
  }
  if (!(alpha > 1.0 && alpha <= 2.0)) {
    throw std::invalid_argument("spectrally negative stable law needs alpha in (1, 2]");
  }
  return {alpha, Role::SpectrallyNegative};
}

StableSpec StableSpec::positive_subordinator(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("stable subordinator needs alpha in (0, 1)");
  }
  return {alpha, Role::PositiveSubordinator};
}

double StableSpec::scale_sigma() const {
  if (alpha == 2.0) return std::numbers::sqrt2 / 2.0;
  // Gamma(1-alpha) and cos(pi alpha/2) share a sign on (0,1) and on (1,2).
  return std::pow(gamma_fn(1.0 - alpha) * std::cos(std::numbers::pi * alpha / 2.0),
                  1.0 / alpha);
}

double sample_stable_unit(const StableSpec& spec, RngStream& rng) {
  const double a = spec.alpha;
  if (a == 2.0) return standard_normal(rng);
  const double v = std::numbers::pi * (uniform_open01(rng) - 0.5);
  const double w = standard_exponential(rng);
  const double t = spec.skewness() * std::tan(std::numbers::pi * a / 2.0);
  const double b = std::atan(t) / a;
  const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * a));
  const double x = s * std::sin(a * (v + b)) / std::pow(std::cos(v), 1.0 / a) *
                   std::pow(std::cos(v - a * (v + b)) / w, (1.0 - a) / a);
  const double out = spec.scale_sigma() * x;
  // Subordinator increments are nonnegative; clamp rounding noise at 0.
  if (spec.role == StableSpec::Role::PositiveSubordinator) return std::max(out, 0.0);
  return out;
}

ProcessPath sample_levy_path(const StableSpec& spec, double u_max, Eigen::Index n,
                             RngStream& rng) {
  ProcessPath path(GridSpec(u_max, n));
  const double scale = std::pow(path.grid.step(), 1.0 / spec.alpha);
  double acc = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    acc += scale * sample_stable_unit(spec, rng);
    path[j] = acc;
  }
  return path;
}

double inverse_subordinator_s_step(double alpha, double u_max, Eigen::Index n,
                                   const InverseSubordinatorOptions& opts) {
  if (opts.s_step > 0.0) return opts.s_step;
  // V(u_max) =d u_max^alpha V(1); cover its mean plus six standard deviations.
  const double g = gamma_fn(1.0 - alpha);
  const double m1 = 1.0 / (g * gamma_fn(1.0 + alpha));
  const double m2 = 2.0 / (g * g * gamma_fn(1.0 + 2.0 * alpha));
  const double sd = std::sqrt(std::max(m2 - m1 * m1, 0.0));
  const double s_range = std::pow(u_max, alpha) * (m1 + 6.0 * sd);
  return s_range / (static_cast<double>(opts.steps_per_point) * static_cast<double>(n));
}

ProcessPath sample_inverse_subordinator_path(double alpha, double u_max, Eigen::Index n,
                                             RngStream& rng,
                                             const InverseSubordinatorOptions& opts) {
  const StableSpec spec = StableSpec::positive_subordinator(alpha);
  ProcessPath path(GridSpec(u_max, n));
  const double ds = inverse_subordinator_s_step(alpha, u_max, n, opts);
  const double inc_scale = std::pow(ds, 1.0 / alpha);
  const long base_steps = static_cast<long>(opts.steps_per_point) * static_cast<long>(n);
  long budget = base_steps;
  int extensions = 0;

  long step = 0;
  double d_prev = 0.0;
  double d_cur = 0.0;
  Eigen::Index j = 0;
  while (j < n) {
    const double u = path.grid[j];
    if (step > 0 && d_prev <= u && u < d_cur) {
      path[j] = ds * (static_cast<double>(step - 1) + (u - d_prev) / (d_cur - d_prev));
      ++j;
      continue;
    }
    if (step >= budget) {
      if (extensions >= opts.max_extensions) {
        throw SimulationError("inverse subordinator: s grid exhausted before covering u_max");
      }
      ++extensions;
      budget *= 2;
    }
    d_prev = d_cur;
    d_cur += inc_scale * sample_stable_unit(spec, rng);
    ++step;
  }
  return path;
}

FractionalStableSampler::FractionalStableSampler(StableSpec spec, double beta, double u,
                                                 Eigen::Index n)
    : spec_(spec), n_(n) {
  if (!(beta >= 0.0)) throw std::invalid_argument("fractional integral needs beta >= 0");
  const GridSpec grid(u, n);
  increment_scale_ = std::pow(grid.step(), 1.0 / spec.alpha);
  weights_.assign(static_cast<std::size_t>(n), 0.0);
  if (beta == 0.0) {
    weights_.back() = 1.0;
    return;
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    weights_[static_cast<std::size_t>(i)] =
        std::pow(u - grid[i], beta) - std::pow(u - grid[i + 1], beta);
  }
}

double FractionalStableSampler::operator()(RngStream& rng) const {
  double w = 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 1; i < n_; ++i) {
    w += increment_scale_ * sample_stable_unit(spec_, rng);
    acc += w * weights_[static_cast<std::size_t>(i)];
  }
  return acc;
}

FractionalInverseSubordinatorSampler::FractionalInverseSubordinatorSampler(
    double alpha, double beta, double u, Eigen::Index n, InverseSubordinatorOptions opts)
    : alpha_(alpha), u_(u), n_(n), opts_(opts) {
  if (!(beta >= 0.0)) throw std::invalid_argument("fractional integral needs beta >= 0");
  const GridSpec grid(u, n);
  weights_.assign(static_cast<std::size_t>(n), 0.0);
  if (beta == 0.0) {
    weights_.back() = 1.0;
    return;
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    weights_[static_cast<std::size_t>(i)] =
        std::pow(u - grid[i], beta) - std::pow(u - grid[i + 1], beta);
  }
}

double FractionalInverseSubordinatorSampler::operator()(RngStream& rng) const {
  const ProcessPath v = sample_inverse_subordinator_path(alpha_, u_, n_, rng, opts_);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n_; ++i) acc += v[i] * weights_[static_cast<std::size_t>(i)];
  return acc;
}

}  // namespace shotnoise

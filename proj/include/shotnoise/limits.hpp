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
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "shotnoise/process_path.hpp"
#include "shotnoise/rng.hpp"

namespace shotnoise {

/*!
 * \brief Law of W_alpha(1) (spectrally negative) or D_alpha(1) (subordinator).
 *
 * SpectrallyNegative, alpha in (1, 2): log E e^{izW} =
 *   -|z|^alpha Gamma(1-alpha) (cos(pi alpha/2) + i sin(pi alpha/2) sgn z),
 * i.e. skewness -1 and scale sigma^alpha = Gamma(1-alpha) cos(pi alpha/2) in
 * the S1 parameterization. alpha = 2 is standard Brownian motion at time 1.
 *
 * PositiveSubordinator, alpha in (0, 1): -log E e^{-sD} = Gamma(1-alpha) s^alpha,
 * i.e. skewness +1 and the same sigma formula.
 */
struct StableSpec {
  enum class Role { SpectrallyNegative, PositiveSubordinator };

  double alpha = 2.0;
  Role role = Role::SpectrallyNegative;

  static StableSpec spectrally_negative(double alpha);
  static StableSpec positive_subordinator(double alpha);

  /// sigma with sigma^alpha = Gamma(1-alpha) cos(pi alpha/2); 1/sqrt(2) at alpha = 2.
  double scale_sigma() const;
  double skewness() const { return role == Role::SpectrallyNegative ? -1.0 : 1.0; }
};

/// One draw of W_alpha(1) or D_alpha(1) (Chambers-Mallows-Stuck).
double sample_stable_unit(const StableSpec& spec, RngStream& rng);

/// W(u_j) as a sum of independent increments Delta^{1/alpha} * W(1); W(0) = 0.
ProcessPath sample_levy_path(const StableSpec& spec, double u_max, Eigen::Index n,
                             RngStream& rng);

struct InverseSubordinatorOptions {
  /// Subordinator steps per output grid interval, at least.
  int steps_per_point = 64;
  /// s-step; 0 picks one from u_max and the grid size.
  double s_step = 0.0;
  int max_extensions = 4;
};

/*!
 * \brief V(u) = inf{s >= 0 : D(s) > u} on a u grid.
 *
 * D is simulated on a uniform s grid; V is the first passage with linear
 * interpolation between the bracketing s values. Simulation of D stops once
 * it has passed u_max.
 */
ProcessPath sample_inverse_subordinator_path(double alpha, double u_max, Eigen::Index n,
                                             RngStream& rng,
                                             const InverseSubordinatorOptions& opts = {});

/// s-step used by sample_inverse_subordinator_path for the given options.
double inverse_subordinator_s_step(double alpha, double u_max, Eigen::Index n,
                                   const InverseSubordinatorOptions& opts = {});

namespace detail {

/// d[m] = m^beta - (m-1)^beta for m >= 1; d[0] = 0.
inline std::vector<double> kernel_differences(Eigen::Index n, double beta) {
  std::vector<double> d(static_cast<std::size_t>(std::max<Eigen::Index>(n, 1)), 0.0);
  for (Eigen::Index m = 1; m < n; ++m) {
    d[static_cast<std::size_t>(m)] =
        std::pow(static_cast<double>(m), beta) - std::pow(static_cast<double>(m - 1), beta);
  }
  return d;
}

}  // namespace detail

/*!
 * \brief Y(u_j) = sum_{i<j} w(u_i) [(u_j - u_i)^beta - (u_j - u_{i+1})^beta].
 *
 * The Stieltjes sum of int w(y) d(-(u - y)^beta) for piecewise-constant w;
 * beta = 0 returns w. O(n^2) for the whole path.
 */
template <typename Scalar>
BasicProcessPath<Scalar> fractional_integral_path(const BasicProcessPath<Scalar>& w,
                                                  double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("fractional integral needs beta >= 0");
  if (beta == 0.0) return w;
  const Eigen::Index n = w.size();
  const auto d = detail::kernel_differences(n, beta);
  const double scale = std::pow(w.grid.step(), beta);
  BasicProcessPath<Scalar> y(w.grid);
  for (Eigen::Index j = 1; j < n; ++j) {
    Scalar acc = 0;
    for (Eigen::Index m = 1; m <= j; ++m) acc += w[j - m] * d[static_cast<std::size_t>(m)];
    y[j] = acc * scale;
  }
  return y;
}

/// Y(u_j) for a single index j in O(j).
template <typename Scalar>
Scalar fractional_integral_at(const BasicProcessPath<Scalar>& w, double beta, Eigen::Index j) {
  if (!(beta >= 0.0)) throw std::invalid_argument("fractional integral needs beta >= 0");
  if (beta == 0.0) return w[j];
  Scalar acc = 0;
  const double h = w.grid.step();
  for (Eigen::Index i = 0; i < j; ++i) {
    const double a = static_cast<double>(j - i) * h;
    const double b = static_cast<double>(j - i - 1) * h;
    acc += w[i] * (std::pow(a, beta) - std::pow(b, beta));
  }
  return acc;
}

/*!
 * \brief Samples Y_{alpha,beta}(u) = int_[0,u] (u - y)^beta dW_alpha(y).
 *
 * Each draw simulates a Levy path on an n-point grid over [0, u] and applies
 * the same Stieltjes sum as fractional_integral_at, with the kernel
 * differences precomputed once.
 */
class FractionalStableSampler {
 public:
  FractionalStableSampler(StableSpec spec, double beta, double u, Eigen::Index n);
  double operator()(RngStream& rng) const;

 private:
  StableSpec spec_;
  Eigen::Index n_;
  double increment_scale_;
  std::vector<double> weights_;  // (u - u_i)^beta - (u - u_{i+1})^beta
};

/// Samples Z_{alpha,beta}(u) = int_[0,u] (u - y)^beta dV_alpha(y) on an n-point grid.
class FractionalInverseSubordinatorSampler {
 public:
  FractionalInverseSubordinatorSampler(double alpha, double beta, double u, Eigen::Index n,
                                       InverseSubordinatorOptions opts = {});
  double operator()(RngStream& rng) const;

 private:
  double alpha_;
  double u_;
  Eigen::Index n_;
  InverseSubordinatorOptions opts_;
  std::vector<double> weights_;
};

}  // namespace shotnoise

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

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "shotnoise/renewal.hpp"

namespace shotnoise {

/// Values of a function on a uniform grid of n nodes spanning an interval of length b - a.
struct TabulatedFunction {
  double a = 0.0;
  double b = 1.0;
  Eigen::VectorXd values;

  static TabulatedFunction tabulate(const std::function<double(double)>& f, double a,
                                    double b, Eigen::Index n);
  double node(Eigen::Index i) const;
};

/*!
 * \brief log E exp(i z W_alpha(1)).
 *
 * alpha in (1, 2):  -|z|^alpha Gamma(1-alpha) (cos(pi alpha/2) + i sin(pi alpha/2) sgn z)
 * alpha = 1:        -|z| (pi/2 - i ln|z| sgn z)
 * alpha = 2:        -z^2 / 2 (standard Brownian motion)
 */
std::complex<double> stable_log_cf(double alpha, double z);

/// int_[a,b] log E exp(i z f(b - y) W_alpha(1)) dy by the trapezoid rule.
/// The table holds f on the distances b - y, i.e. on [0, b - a] uniformly.
std::complex<double> integral_log_cf(const TabulatedFunction& f, double alpha, double z);

/// Characteristic exponent of Y_{alpha,beta}(u): integral_log_cf with f(y) = y^beta on [0, u].
std::complex<double> fractional_stable_log_cf(double alpha, double beta, double u, double z,
                                              Eigen::Index nodes = 4097);

/*!
 * E Z_{alpha,beta}(u)^k for alpha in (0, 1):
 *   u^{k(alpha+beta)} k! / Gamma(1-alpha)^k
 *     prod_{j=1..k} Gamma(beta + 1 + (j-1)(alpha+beta)) / Gamma(j(alpha+beta) + 1).
 * At beta = 0 this is the inverse stable subordinator moment
 *   E V_alpha(u)^k = k! u^{k alpha} / (Gamma(1-alpha)^k Gamma(k alpha + 1)).
 */
double z_moment(double alpha, double beta, double u, int k);

/// Phi_alpha(x) = Gamma(1-alpha) Gamma(alpha x + 1) / Gamma(alpha (x-1) + 1) - 1.
double phi_alpha(double alpha, double x);

/// E Z_{alpha,beta}(1)^k through k! / prod_j (Phi_alpha(c j) + 1), c = (alpha+beta)/alpha.
double z_moment_phi_form(double alpha, double beta, int k);

/// Scale s with Y_{alpha,beta}(u) =d s W_alpha(1): (u^{alpha beta + 1} / (alpha beta + 1))^{1/alpha}.
double p3_scale(double alpha, double beta, double u);

struct GaussianMoments {
  double m2 = 0.0;
  double m4 = 0.0;
};

/// Second and fourth moments of int f dW_2: m2 = int f^2, m4 = 3 m2^2.
GaussianMoments gaussian_moments(const TabulatedFunction& f);

/// Cov(Y_{2,beta}(v), Y_{2,beta}(u)) = int_0^v (u-y)^beta (v-y)^beta dy, 0 < v <= u.
double gaussian_cov(double beta, double u, double v);

/// beta + 1/alpha for stable-driven limits, beta + alpha for A4.
double hurst_exponent(LimitCase c, double alpha, double beta);

struct MomentTable {
  double alpha = 0.0;
  double beta = 0.0;
  double u = 1.0;
  /// moments[k-1] = E Z^k.
  std::vector<double> moments;
};

MomentTable moment_table(double alpha, double beta, double u, int max_k);

}  // namespace shotnoise

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

#include "shotnoise/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shotnoise/quadrature.hpp"
#include "shotnoise/special.hpp"

namespace shotnoise {

TabulatedFunction TabulatedFunction::tabulate(const std::function<double(double)>& f,
                                              double a, double b, Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("tabulate needs at least 2 nodes");
  TabulatedFunction out{a, b, Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) out.values(i) = f(out.node(i));
  return out;
}

double TabulatedFunction::node(Eigen::Index i) const {
  const Eigen::Index n = values.size();
  if (i + 1 == n) return b;
  return a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::complex<double> stable_log_cf(double alpha, double z) {
  using namespace std::complex_literals;
  if (z == 0.0) return 0.0;
  const double sgn = z > 0.0 ? 1.0 : -1.0;
  const double az = std::abs(z);
  if (alpha == 2.0) return -0.5 * z * z;
  if (alpha == 1.0) {
    return -az * (std::numbers::pi / 2.0 - 1.0i * std::log(az) * sgn);
  }
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw std::invalid_argument("stable_log_cf needs alpha in (1, 2) or alpha in {1, 2}");
  }
  const double half = std::numbers::pi * alpha / 2.0;
  return -std::pow(az, alpha) * gamma_fn(1.0 - alpha) *
         (std::cos(half) + 1.0i * std::sin(half) * sgn);
}

std::complex<double> integral_log_cf(const TabulatedFunction& f, double alpha, double z) {
  const Eigen::Index n = f.values.size();
  if (n < 2) throw std::invalid_argument("integral_log_cf needs at least 2 nodes");
  // values(i) is f at b - y_{n-1-i}; the trapezoid sum is order-independent.
  Eigen::VectorXcd integrand(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    integrand(i) = stable_log_cf(alpha, z * f.values(i));
  }
  return trapezoid(integrand, f.a, f.b);
}

std::complex<double> fractional_stable_log_cf(double alpha, double beta, double u, double z,
                                              Eigen::Index nodes) {
  const auto f = TabulatedFunction::tabulate([&](double y) { return std::pow(u - y, beta); },
                                             0.0, u, nodes);
  return integral_log_cf(f, alpha, z);
}

double z_moment(double alpha, double beta, double u, int k) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("z_moment needs alpha in (0, 1)");
  if (!(beta >= 0.0)) throw std::invalid_argument("z_moment needs beta >= 0");
  if (k < 0) throw std::invalid_argument("z_moment needs k >= 0");
  if (k == 0) return 1.0;
  const double g = gamma_fn(1.0 - alpha);
  const double h = alpha + beta;
  if (beta == 0.0) {
    double denom = 1.0;
    for (int j = 1; j <= k; ++j) {
      denom *= g * gamma_fn(j * alpha + 1.0) / gamma_fn((j - 1) * alpha + 1.0);
    }
    return factorial(k) * std::pow(u, k * alpha) / denom;
  }
  double prod = 1.0;
  for (int j = 1; j <= k; ++j) {
    prod *= gamma_fn(beta + 1.0 + (j - 1) * h) / (g * gamma_fn(j * h + 1.0));
  }
  return std::pow(u, k * h) * factorial(k) * prod;
}

double phi_alpha(double alpha, double x) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("phi_alpha needs alpha in (0, 1)");
  if (!(x >= 0.0)) throw std::invalid_argument("phi_alpha needs x >= 0");
  return gamma_fn(1.0 - alpha) * gamma_fn(alpha * x + 1.0) / gamma_fn(alpha * (x - 1.0) + 1.0) -
         1.0;
}

double z_moment_phi_form(double alpha, double beta, int k) {
  if (k == 0) return 1.0;
  const double c = (alpha + beta) / alpha;
  double denom = 1.0;
  for (int j = 1; j <= k; ++j) denom *= phi_alpha(alpha, c * j) + 1.0;
  return factorial(k) / denom;
}

double p3_scale(double alpha, double beta, double u) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw std::invalid_argument("p3_scale needs alpha in (1, 2]");
  if (!(beta >= 0.0) || !(u > 0.0)) throw std::invalid_argument("p3_scale needs beta >= 0, u > 0");
  const double e = alpha * beta + 1.0;
  return std::pow(std::pow(u, e) / e, 1.0 / alpha);
}

GaussianMoments gaussian_moments(const TabulatedFunction& f) {
  const double m2 = trapezoid(f.values.array().square().matrix(), f.a, f.b);
  return {m2, 3.0 * m2 * m2};
}

double gaussian_cov(double beta, double u, double v) {
  if (!(v > 0.0 && v <= u)) throw std::invalid_argument("gaussian_cov needs 0 < v <= u");
  if (beta == 0.0) return std::min(u, v);
  // s = v - y, then s = v w^{1/(beta+1)} absorbs the s^beta endpoint factor.
  const double e = 1.0 / (beta + 1.0);
  const double inner = adaptive_simpson(
      [&](double w) { return std::pow(u - v + v * std::pow(w, e), beta); }, 0.0, 1.0, 1e-12);
  return std::pow(v, beta + 1.0) * e * inner;
}

double hurst_exponent(LimitCase c, double alpha, double beta) {
  switch (c) {
    case LimitCase::A1:
    case LimitCase::A2:
      return beta + 0.5;
    case LimitCase::A3:
    case LimitCase::A5:
      return beta + 1.0 / alpha;
    case LimitCase::A4:
      return beta + alpha;
  }
  return 0.0;
}

MomentTable moment_table(double alpha, double beta, double u, int max_k) {
  if (max_k < 1) throw std::invalid_argument("moment table needs k >= 1");
  if (!(u > 0.0)) throw std::invalid_argument("moment table needs u > 0");
  MomentTable table{alpha, beta, u, {}};
  for (int k = 1; k <= max_k; ++k) table.moments.push_back(z_moment(alpha, beta, u, k));
  return table;
}

}  // namespace shotnoise

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

#include <Eigen/Core>

namespace shotnoise {

namespace detail {

template <typename F>
double simpson_step(const F& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/*!
 * \brief Adaptive Simpson quadrature of f over [a, b].
 *
 * The tolerance is relative to a coarse first estimate of the integral
 * (absolute when that estimate is zero). The interval is pre-split into
 * 16 panels so that narrow features are not missed by the first sample.
 */
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double rel_tol = 1e-10,
                        int max_depth = 48) {
  if (b == a) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, rel_tol, max_depth);
  constexpr int kPanels = 16;
  const double h = (b - a) / kPanels;
  double coarse = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double x0 = a + i * h;
    coarse += h / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h));
  }
  const double scale = std::abs(coarse) > 0.0 ? std::abs(coarse) : 1.0;
  const double tol = rel_tol * scale / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double x0 = a + i * h;
    const double x1 = (i + 1 == kPanels) ? b : x0 + h;
    const double xm = 0.5 * (x0 + x1);
    const double f0 = f(x0), f1 = f(x1), fm = f(xm);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += detail::simpson_step(f, x0, f0, x1, f1, xm, fm, whole, tol,
                                  max_depth);
  }
  return total;
}

/// Trapezoid rule for values tabulated on a uniform grid over [a, b].
template <typename Derived>
auto trapezoid(const Eigen::DenseBase<Derived>& values, double a, double b) ->
    typename Derived::Scalar {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = values.size();
  if (n < 2) throw std::invalid_argument("trapezoid: need at least 2 nodes");
  const double h = (b - a) / static_cast<double>(n - 1);
  Scalar sum = 0.5 * (values(0) + values(n - 1));
  for (Eigen::Index i = 1; i + 1 < n; ++i) sum += values(i);
  return sum * h;
}

}  // namespace shotnoise

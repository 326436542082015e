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

#include "shotnoise/shotnoise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace shotnoise {

double required_horizon(const ResponseFunction& h, double t_max) {
  if (const auto& left = h.left_tail()) return t_max + left->truncation_point();
  return t_max;
}

Eigen::VectorXd shot_noise_at(const RenewalPath& path, const ResponseFunction& h,
                              std::span<const double> times) {
  const std::size_t n = times.size();
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  if (n == 0) return out;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return times[a] < times[b]; });
  const double t_max = times[order.back()];
  if (required_horizon(h, t_max) > path.horizon) {
    throw SimulationError("shot noise evaluation beyond the simulated horizon");
  }

  const ResponseFunction& right = h.right_part();
  const auto& jumps = path.jumps;
  // Times are visited in increasing order so the arrival index only advances.
  std::size_t count = 0;
  for (auto idx : order) {
    const double t = times[idx];
    if (t < 0.0) {
      count = 0;
    } else {
      while (count < jumps.size() && jumps[count] <= t) ++count;
    }
    double x = 0.0;
    if (right.piecewise_constant()) {
      const auto& pts = right.step_points();
      const auto& wts = right.step_weights();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (wts[i] == 0.0) continue;
        x += wts[i] * static_cast<double>(count_at(path, t - pts[i]));
      }
    } else {
      for (std::size_t k = 0; k < count; ++k) x += right(t - jumps[k]);
    }
    if (const auto& left = h.left_tail()) {
      const double reach = t + left->truncation_point();
      for (std::size_t k = count; k < jumps.size() && jumps[k] <= reach; ++k) {
        x += (*left)(jumps[k] - t);
      }
    }
    out(static_cast<Eigen::Index>(idx)) = x;
  }
  return out;
}

ProcessPath evaluate_shot_noise(const RenewalPath& path, const ResponseFunction& h,
                                const GridSpec& t_grid) {
  std::vector<double> times(static_cast<std::size_t>(t_grid.n_points));
  for (Eigen::Index j = 0; j < t_grid.n_points; ++j) times[static_cast<std::size_t>(j)] = t_grid[j];
  return ProcessPath(t_grid, shot_noise_at(path, h, times));
}

Eigen::VectorXd normalized_at(const RenewalPath& path, const ResponseFunction& h,
                              const LimitCaseSpec& spec, double t,
                              std::span<const double> u_points) {
  if (!(t > 0.0)) throw std::invalid_argument("normalized process needs t > 0");
  std::vector<double> times(u_points.size());
  for (std::size_t j = 0; j < u_points.size(); ++j) times[j] = u_points[j] * t;
  Eigen::VectorXd x = shot_noise_at(path, h, times);
  const double scale = spec.scale_fn(t);
  for (std::size_t j = 0; j < u_points.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    x(i) = (x(i) - spec.center_fn(t, u_points[j])) / scale;
  }
  return x;
}

ProcessPath normalized_process(const RenewalPath& path, const ResponseFunction& h,
                               const LimitCaseSpec& spec, double t, const GridSpec& u_grid) {
  std::vector<double> u(static_cast<std::size_t>(u_grid.n_points));
  for (Eigen::Index j = 0; j < u_grid.n_points; ++j) u[static_cast<std::size_t>(j)] = u_grid[j];
  return ProcessPath(u_grid, normalized_at(path, h, spec, t, u));
}

}  // namespace shotnoise

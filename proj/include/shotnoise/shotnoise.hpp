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

#include <span>

#include <Eigen/Core>

#include "shotnoise/process_path.hpp"
#include "shotnoise/renewal.hpp"
#include "shotnoise/response.hpp"

namespace shotnoise {

/// Horizon a renewal path must cover to evaluate X up to time t_max.
double required_horizon(const ResponseFunction& h, double t_max);

/*!
 * \brief X(t) = sum_k h(t - S_k) at arbitrary times.
 *
 * One-sided h sums over S_k <= t. Two-sided h adds the arrivals after t
 * whose distance to t is within the left tail's truncation point.
 * Throws SimulationError when a time needs jumps past the simulated horizon.
 */
Eigen::VectorXd shot_noise_at(const RenewalPath& path, const ResponseFunction& h,
                              std::span<const double> times);

/// X on the grid t_j = j * t_grid.u_max / (n - 1).
ProcessPath evaluate_shot_noise(const RenewalPath& path, const ResponseFunction& h,
                                const GridSpec& t_grid);

/// X_t(u) = (X(ut) - center(t, u)) / scale(t) at arbitrary u.
Eigen::VectorXd normalized_at(const RenewalPath& path, const ResponseFunction& h,
                              const LimitCaseSpec& spec, double t,
                              std::span<const double> u_points);

/// X_t(u) on a u grid.
ProcessPath normalized_process(const RenewalPath& path, const ResponseFunction& h,
                               const LimitCaseSpec& spec, double t, const GridSpec& u_grid);

}  // namespace shotnoise

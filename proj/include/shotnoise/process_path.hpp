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

#include <stdexcept>

#include <Eigen/Core>

namespace shotnoise {

/// Uniform grid u_j = j * u_max / (n_points - 1), j = 0..n_points-1.
struct GridSpec {
  double u_max = 1.0;
  Eigen::Index n_points = 512;

  GridSpec() = default;
  GridSpec(double u_max_, Eigen::Index n_points_) : u_max(u_max_), n_points(n_points_) {
    if (!(u_max > 0.0)) throw std::invalid_argument("grid needs u_max > 0");
    if (n_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  }

  double step() const { return u_max / static_cast<double>(n_points - 1); }
  double operator[](Eigen::Index j) const {
    return j + 1 == n_points ? u_max : static_cast<double>(j) * step();
  }
};

/// A function sampled on a uniform grid.
template <typename Scalar>
struct BasicProcessPath {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  GridSpec grid;
  Vector values;

  BasicProcessPath() = default;
  explicit BasicProcessPath(const GridSpec& g) : grid(g), values(Vector::Zero(g.n_points)) {}
  BasicProcessPath(const GridSpec& g, Vector v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n_points) {
      throw std::invalid_argument("path values do not match grid length");
    }
  }

  Eigen::Index size() const { return values.size(); }
  double u(Eigen::Index j) const { return grid[j]; }
  Scalar operator[](Eigen::Index j) const { return values(j); }
  Scalar& operator[](Eigen::Index j) { return values(j); }
  Scalar back() const { return values(values.size() - 1); }
};

using ProcessPath = BasicProcessPath<double>;

}  // namespace shotnoise

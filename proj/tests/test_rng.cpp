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

#include <algorithm>
#include <concepts>
#include <random>
#include <set>
#include <vector>

#include "shotnoise/parallel.hpp"
#include "shotnoise/rng.hpp"

using namespace shotnoise;

static_assert(std::uniform_random_bit_generator<RngStream>);

TEST_CASE("streams are reproducible and distinct") {
  RngStream a = RngStream::for_replicate(7, 3);
  RngStream b = RngStream::for_replicate(7, 3);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());

  std::set<std::uint64_t> firsts;
  for (std::uint64_t r = 0; r < 1000; ++r) firsts.insert(RngStream::for_replicate(7, r)());
  CHECK(firsts.size() == 1000);

  RngStream base = RngStream::for_replicate(7, 3);
  CHECK(base.split(0)() != base.split(1)());
  CHECK(RngStream::for_replicate(7, 3)() != RngStream::for_replicate(8, 3)());
}

TEST_CASE("uniform draws stay inside (0, 1)") {
  RngStream rng(12345);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform_open01(rng);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  // mean of U(0,1) has s.e. 1/sqrt(12 n)
  CHECK(std::abs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("normal and exponential draws have the right first two moments") {
  RngStream rng(99);
  const int n = 400000;
  double m1 = 0, m2 = 0, e1 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = standard_normal(rng);
    m1 += z;
    m2 += z * z;
    e1 += standard_exponential(rng);
  }
  m1 /= n;
  m2 /= n;
  e1 /= n;
  CHECK(std::abs(m1) < 4.0 / std::sqrt(n));
  CHECK(std::abs(m2 - 1.0) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(e1 - 1.0) < 4.0 / std::sqrt(n));
}

TEST_CASE("parallel_for results do not depend on the worker count") {
  auto fill = [](int threads) {
    std::vector<double> out(5000);
    parallel_for(out.size(), threads, [&](std::size_t i) {
      RngStream rng = RngStream::for_replicate(42, i);
      out[i] = standard_normal(rng);
    });
    return out;
  };
  const auto one = fill(1);
  CHECK(one == fill(3));
  CHECK(one == fill(8));
}

TEST_CASE("parallel_for rethrows worker exceptions") {
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 57) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(0) >= 1);
}

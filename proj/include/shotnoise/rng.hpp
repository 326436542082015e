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
#include <cstdint>
#include <limits>
#include <numbers>

namespace shotnoise {

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/*!
 * \brief Counter-based random stream.
 *
 * The n-th output is mix64(key + n * gamma), so a stream is fully described
 * by (key, counter). Independent streams are obtained from a master seed and
 * a stream index with for_replicate(); the sequence drawn by replicate i
 * never depends on how replicates are scheduled across threads.
 *
 * Satisfies std::uniform_random_bit_generator.
 */
class RngStream {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

  constexpr explicit RngStream(std::uint64_t key) noexcept : key_(key) {}

  /// Stream for replicate `index` of an experiment seeded with `seed`.
  static constexpr RngStream for_replicate(std::uint64_t seed,
                                           std::uint64_t index) noexcept {
    return RngStream(mix64(mix64(seed) ^ mix64(index + kGamma)));
  }

  /// Derived stream, e.g. one per sub-task of a replicate.
  constexpr RngStream split(std::uint64_t tag) const noexcept {
    return RngStream(mix64(key_ ^ mix64(tag ^ 0x2545f4914f6cdd1dull)));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    return mix64(key_ + (++counter_) * kGamma);
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform on the open interval (0, 1), 53-bit resolution.
inline double uniform_open01(RngStream& rng) noexcept {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard exponential by inversion.
inline double standard_exponential(RngStream& rng) noexcept {
  return -std::log(uniform_open01(rng));
}

/// Standard normal by Box-Muller (one value per call; the partner is dropped
/// so draws stay a pure function of the stream position).
inline double standard_normal(RngStream& rng) noexcept {
  const double u1 = uniform_open01(rng);
  const double u2 = uniform_open01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace shotnoise

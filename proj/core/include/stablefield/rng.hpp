// Copyright 2026 The stablefield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABLEFIELD_RNG_HPP
#define STABLEFIELD_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

/**
 * \file
 * \brief Counter-based random number streams.
 *
 * Streams are built on the Philox4x32-10 block function (Salmon et al., SC'11). A stream is
 * identified by a 64-bit seed (the Philox key) and a 64-bit stream id (the upper half of the
 * counter). Output depends only on (seed, stream id, position), so identical streams produce
 * bit-identical sequences on every platform, and replicate loops can hand out
 * `substream(i)` to workers without caring about scheduling order.
 */

namespace stablefield {

/// Philox4x32 with 10 rounds. Exposed for tests against published known-answer vectors.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer; used to derive stream ids.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
      : seed_{seed}, stream_id_{stream_id} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Standard exponential, strictly positive.
  double exponential() noexcept;

  /// Standard normal (Box-Muller, one value per call).
  double normal() noexcept;

  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Independent stream derived from this one and `index`; does not advance this stream.
  [[nodiscard]] RngStream substream(std::uint64_t index) const noexcept;

  /// Derive a fresh stream from the next output of this one (advances this stream).
  [[nodiscard]] RngStream split() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t position() const noexcept { return 2 * block_ - (buffered_ ? 1 : 0); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::uint64_t spare_ = 0;
  bool buffered_ = false;
};

}  // namespace stablefield

#endif  // STABLEFIELD_RNG_HPP

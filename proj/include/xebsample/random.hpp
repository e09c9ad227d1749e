// Copyright 2026 The xebsample Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XEBSAMPLE_RANDOM_HPP_
#define XEBSAMPLE_RANDOM_HPP_

#include <cstdint>
#include <limits>

namespace xebsample {

// The single pseudo-random generator used throughout the library: SplitMix64
// (Steele, Lea & Flood 2014; constants from Vigna's reference implementation).
//
// It satisfies std::uniform_random_bit_generator. Its output for a given seed
// is fully specified, so every table and batch is reproducible bit-for-bit.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kIncrement = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += kIncrement;
    return Finalize(state_);
  }

  // The SplitMix64 output function, a bijective 64-bit mixer.
  static constexpr std::uint64_t Finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Derives the seed of an independent substream from a master seed and a
// stream index. For a fixed master seed the map is injective in `index`.
//
// Used for per-sample streams (index = sample index) and per-n sweep tables
// (index = n).
constexpr std::uint64_t mix_seed(std::uint64_t master_seed,
                                 std::uint64_t index) noexcept {
  return SplitMix64::Finalize(SplitMix64::Finalize(master_seed) +
                              SplitMix64::kIncrement * (index + 1));
}

// Top 53 bits as a double in [0, 1).
constexpr double uniform_closed_open(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Top 52 bits, offset by half a step: open interval (0, 1), never 0 or 1.
// (With 53 bits the top value would round up to 1.0.)
constexpr double uniform_open(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace xebsample

#endif  // XEBSAMPLE_RANDOM_HPP_

// Copyright 2026 The servesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace servesim {

// Counter-based generator: the i-th draw of stream (seed, stream) is
// splitmix64_mix(key + (i + 1) * golden_gamma), where key mixes seed and
// stream id. Any implementation of the same mixing function replays traces.
inline constexpr std::string_view kRngAlgorithm = "splitmix64-ctr-v1";

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Well-known stream ids. Arrival streams fold in the attempt number.
enum class RngStream : std::uint64_t {
  kArrivals = 1,
  kPayloads = 2,
  kColdStart = 3,
  kService = 4,
};

class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64_mix(seed ^ splitmix64_mix(stream + kGamma))) {}
  CounterRng(std::uint64_t seed, RngStream stream, std::uint64_t substream = 0)
      : CounterRng(seed, static_cast<std::uint64_t>(stream) | (substream << 8)) {}

  // Random access into the stream; does not advance the cursor.
  std::uint64_t at(std::uint64_t index) const {
    return splitmix64_mix(key_ + (index + 1) * kGamma);
  }
  std::uint64_t next() { return at(counter_++); }

  // Uniform on [0, 1) with 53 bits of precision.
  double uniform() { return to_unit(next()); }
  double uniform_at(std::uint64_t index) const { return to_unit(at(index)); }

  // Exponential with the given rate, by inversion.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  // Uniform integer in [0, n) via 128-bit multiply (Lemire, no rejection;
  // bias is below 2^-64 * n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  std::uint64_t counter() const { return counter_; }

 private:
  static double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace servesim

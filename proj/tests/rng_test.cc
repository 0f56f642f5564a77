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

#include "servesim/rng.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace servesim {
namespace {

TEST(Splitmix64, MatchesReferenceOutputs) {
  // First two outputs of the reference splitmix64 seeded with 0.
  EXPECT_EQ(splitmix64_mix(0x9E3779B97F4A7C15ULL), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(splitmix64_mix(2 * 0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
}

TEST(CounterRng, RandomAccessMatchesSequential) {
  CounterRng a(42, RngStream::kArrivals);
  const CounterRng b(42, RngStream::kArrivals);
  for (std::uint64_t i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.at(i));
  EXPECT_EQ(a.counter(), 100u);
}

TEST(CounterRng, StreamsAndSubstreamsAreDistinct) {
  std::set<std::uint64_t> firsts;
  for (auto s : {RngStream::kArrivals, RngStream::kPayloads, RngStream::kColdStart,
                 RngStream::kService}) {
    for (std::uint64_t sub = 0; sub < 4; ++sub) firsts.insert(CounterRng(7, s, sub).at(0));
  }
  EXPECT_EQ(firsts.size(), 16u);
  EXPECT_NE(CounterRng(1, RngStream::kArrivals).at(0), CounterRng(2, RngStream::kArrivals).at(0));
}

TEST(CounterRng, UniformInUnitInterval) {
  CounterRng r(3, RngStream::kService);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(CounterRng, ExponentialMean) {
  CounterRng r(5, RngStream::kService);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += r.exponential(4.0);
  EXPECT_NEAR(sum / n, 0.25, 0.25 * 0.01);
}

TEST(CounterRng, BelowStaysInRange) {
  CounterRng r(9, RngStream::kPayloads);
  for (int i = 0; i < 10000; ++i) EXPECT_LT(r.below(7), 7u);
  EXPECT_EQ(r.below(1), 0u);
}

}  // namespace
}  // namespace servesim

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

#include "servesim/workload.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "servesim/errors.h"
#include "servesim/presets.h"

namespace servesim {
namespace {

WorkloadSpec poisson(double rate, double duration, std::uint64_t seed = 1) {
  WorkloadSpec w;
  w.mmpp = MmppParams{rate, rate, 100.0, 100.0};
  w.duration = duration;
  w.seed = seed;
  return w;
}

std::vector<RequestEvent> numbered(int n) {
  std::vector<RequestEvent> out(n);
  for (int i = 0; i < n; ++i) {
    out[i].request_id = i;
    out[i].arrival_time = 0.5 * i;
    out[i].payload_bytes = 10.0;
  }
  return out;
}

TEST(MeanRate, EqualRatesGiveThatRate) {
  EXPECT_DOUBLE_EQ(mean_rate({40, 40, 3.0, 700.0}), 40.0);
}

TEST(MeanRate, StationaryMixture) {
  const double pi_h = 60.0 / (112.8 + 60.0);
  const double expected = (1.0 - pi_h) * 40.0 + pi_h * 200.0;
  EXPECT_DOUBLE_EQ(mean_rate({40, 200, 112.8, 60}), expected);
  EXPECT_NEAR(mean_rate({40, 200, 112.8, 60}), 95.5, 0.1);
}

TEST(MeanRate, PresetsHitStatedCounts) {
  EXPECT_NEAR(mean_rate(workload_preset(40).mmpp) * 900.0, 15000.0, 1e-6);
  EXPECT_NEAR(mean_rate(workload_preset(120).mmpp) * 900.0, 51600.0, 1e-6);
  EXPECT_NEAR(mean_rate(workload_preset(200).mmpp) * 900.0, 86000.0, 1e-6);
  EXPECT_NEAR(15000.0 / 900.0, 16.67, 0.01);
  EXPECT_NEAR(51600.0 / 900.0, 57.33, 0.01);
  EXPECT_NEAR(86000.0 / 900.0, 95.56, 0.01);
}

TEST(MeanRate, PresetDwellTimes) {
  EXPECT_NEAR(workload_preset(40).mmpp.mean_dwell_low, 161.6, 0.2);
  EXPECT_NEAR(workload_preset(120).mmpp.mean_dwell_low, 112.8, 0.1);
  EXPECT_NEAR(workload_preset(200).mmpp.mean_dwell_low, 112.8, 0.1);
  EXPECT_DOUBLE_EQ(workload_preset(200).mmpp.lambda_low, 40.0);
}

TEST(MeanRate, RejectsInvalidParams) {
  EXPECT_THROW(mean_rate({0, 1, 1, 1}), ParameterError);
  EXPECT_THROW(mean_rate({2, 1, 1, 1}), ParameterError);
  EXPECT_THROW(mean_rate({1, 2, 0, 1}), ParameterError);
  EXPECT_THROW(mean_rate({1, 2, 1, -1}), ParameterError);
}

TEST(GenerateArrivals, ZeroDurationIsEmpty) {
  EXPECT_TRUE(generate_arrivals(poisson(10, 0.0)).empty());
}

TEST(GenerateArrivals, PoissonDegenerateCountAndExponentiality) {
  const auto ev = generate_arrivals(poisson(10.0, 10000.0, 11));
  EXPECT_NEAR(static_cast<double>(ev.size()), 100000.0, 2000.0);

  // Kolmogorov-Smirnov against Exp(10) on inter-arrival gaps.
  std::vector<double> gaps;
  for (std::size_t i = 1; i < ev.size(); ++i) gaps.push_back(ev[i].arrival_time - ev[i - 1].arrival_time);
  std::sort(gaps.begin(), gaps.end());
  const double n = static_cast<double>(gaps.size());
  double d = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const double f = 1.0 - std::exp(-10.0 * gaps[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  EXPECT_LT(d, 1.63 / std::sqrt(n));  // 1% critical value
}

TEST(GenerateArrivals, SortedIdsAndWithinWindow) {
  WorkloadSpec w = workload_preset(120);
  w.seed = 4;
  const auto ev = generate_arrivals(w);
  ASSERT_FALSE(ev.empty());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    EXPECT_EQ(ev[i].request_id, static_cast<std::int64_t>(i));
    EXPECT_GE(ev[i].arrival_time, 0.0);
    EXPECT_LE(ev[i].arrival_time, w.duration);
    if (i > 0) EXPECT_GE(ev[i].arrival_time, ev[i - 1].arrival_time);
  }
}

TEST(GenerateArrivals, DeterministicPerSeed) {
  WorkloadSpec w = workload_preset(40);
  w.seed = 77;
  EXPECT_EQ(generate_arrivals(w), generate_arrivals(w));
  WorkloadSpec other = w;
  other.seed = 78;
  EXPECT_NE(generate_arrivals(w), generate_arrivals(other));
}

TEST(GenerateArrivals, BurstsMarkHighRateIntervals) {
  WorkloadSpec w = workload_preset(40);
  w.seed = 5;
  const auto g = generate_workload(w);
  ASSERT_FALSE(g.bursts.empty());
  double inside = 0.0, span = 0.0;
  for (const auto& b : g.bursts) {
    span += b.end - b.start;
    for (const auto& e : g.events) {
      if (e.arrival_time >= b.start && e.arrival_time < b.end) inside += 1.0;
    }
  }
  // Rate inside bursts is lambda_high (loose: one realization).
  EXPECT_NEAR(inside / span, 40.0, 40.0 * 0.15);
}

TEST(GenerateArrivals, PresetMeanCountOverFiftySeeds) {
  for (int lh : {40, 120, 200}) {
    WorkloadSpec w = workload_preset(lh);
    const double target = static_cast<double>(w.target_requests);
    double total = 0.0;
    for (std::uint64_t s = 1; s <= 50; ++s) {
      w.seed = s;
      const double n = static_cast<double>(generate_arrivals(w).size());
      EXPECT_NEAR(n, target, 0.10 * target) << "w" << lh << " seed " << s;
      total += n;
    }
    EXPECT_NEAR(total / 50.0, target, 0.03 * target) << "w" << lh;
  }
}

TEST(GenerateArrivals, UnconditionedRateLaw) {
  // Plain MMPP (no count band) over long windows from the stationary state.
  WorkloadSpec w = workload_preset(200);
  w.target_requests = 0;
  w.initial_state = InitialState::kStationary;
  w.duration = 9000.0;
  double total = 0.0;
  for (std::uint64_t s = 1; s <= 50; ++s) {
    w.seed = s;
    total += static_cast<double>(generate_arrivals(w).size());
  }
  const double expected = mean_rate(w.mmpp) * w.duration * 50.0;
  EXPECT_NEAR(total, expected, 0.03 * expected);
}

TEST(GenerateArrivals, UnreachableTargetFails) {
  WorkloadSpec w = poisson(1.0, 100.0);
  w.target_requests = 100000;
  w.max_attempts = 5;
  EXPECT_THROW(generate_workload(w), ParameterError);
}

TEST(SplitClients, SingleClientIdentity) {
  const auto ev = numbered(13);
  const auto s = split_clients(ev, 1);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], ev);
}

TEST(SplitClients, OnePerClient) {
  const auto s = split_clients(numbered(8), 8);
  for (int c = 0; c < 8; ++c) {
    ASSERT_EQ(s[c].size(), 1u);
    EXPECT_EQ(s[c][0].request_id, c);
    EXPECT_EQ(s[c][0].client_id, c);
  }
}

TEST(SplitClients, LargeStreamBalancedAndConserved) {
  const auto ev = numbered(86000 + 3);
  const auto s = split_clients(ev, 8);
  std::size_t lo = ev.size(), hi = 0;
  std::vector<std::int64_t> merged;
  for (const auto& c : s) {
    lo = std::min(lo, c.size());
    hi = std::max(hi, c.size());
    for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LT(c[i - 1].request_id, c[i].request_id);
    for (const auto& e : c) merged.push_back(e.request_id);
  }
  EXPECT_LE(hi - lo, 1u);
  std::sort(merged.begin(), merged.end());
  std::vector<std::int64_t> original;
  for (const auto& e : ev) original.push_back(e.request_id);
  EXPECT_EQ(merged, original);
}

TEST(AssignPayloads, SingletonPool) {
  for (const auto& e : assign_payloads(numbered(50), 1, 3)) EXPECT_EQ(e.payload_id, 0);
}

TEST(AssignPayloads, UniformOverPool) {
  const auto ev = assign_payloads(numbered(86000), 200, 21);
  std::map<int, int> freq;
  for (const auto& e : ev) {
    ASSERT_GE(e.payload_id, 0);
    ASSERT_LT(e.payload_id, 200);
    ++freq[e.payload_id];
  }
  EXPECT_EQ(freq.size(), 200u);
  for (const auto& [id, n] : freq) EXPECT_NEAR(n, 430, 86) << "payload " << id;
}

TEST(AssignPayloads, Deterministic) {
  EXPECT_EQ(assign_payloads(numbered(500), 200, 8), assign_payloads(numbered(500), 200, 8));
}

TEST(BatchRequests, SizeOneIsIdentity) {
  const auto ev = numbered(9);
  EXPECT_EQ(batch_requests(ev, 1), ev);
}

TEST(BatchRequests, RemainderFlush) {
  const auto inv = batch_requests(numbered(10), 4);
  ASSERT_EQ(inv.size(), 3u);
  EXPECT_EQ(inv[0].batch_count, 4);
  EXPECT_EQ(inv[1].batch_count, 4);
  EXPECT_EQ(inv[2].batch_count, 2);
  EXPECT_EQ(inv[0].request_id, 3);
  EXPECT_DOUBLE_EQ(inv[0].arrival_time, 1.5);
  EXPECT_EQ(inv[2].request_id, 9);
  EXPECT_DOUBLE_EQ(inv[2].payload_bytes, 20.0);
  EXPECT_EQ(inv[1].sample_ids, (std::vector<std::int64_t>{4, 5, 6, 7}));
}

TEST(BatchRequests, ConservesSamples) {
  for (int n = 0; n < 40; ++n) {
    for (int b = 1; b <= 9; ++b) {
      int total = 0;
      for (const auto& inv : batch_requests(numbered(n), b)) total += inv.batch_count;
      EXPECT_EQ(total, n);
    }
  }
}

TEST(BuildInvocations, OrderedAndComplete) {
  WorkloadSpec w = workload_preset(40);
  w.seed = 2;
  w.batch_size = 3;
  const auto s = build_invocations(w);
  std::int64_t samples = 0;
  for (std::size_t i = 0; i < s.invocations.size(); ++i) {
    samples += s.invocations[i].batch_count;
    if (i > 0) EXPECT_LE(s.invocations[i - 1].arrival_time, s.invocations[i].arrival_time);
  }
  EXPECT_EQ(samples, static_cast<std::int64_t>(s.requests.size()));
  for (std::size_t i = 0; i < s.requests.size(); ++i) {
    EXPECT_EQ(s.requests[i].request_id, static_cast<std::int64_t>(i));
    EXPECT_EQ(s.requests[i].client_id, static_cast<int>(i % 8));
  }
}

TEST(WorkloadCsv, RoundTrip) {
  WorkloadSpec w = workload_preset(40);
  w.duration = 60.0;
  w.target_requests = 0;
  const auto s = build_invocations(w);
  std::stringstream ss;
  write_workload_csv(ss, s.requests);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "request_id,client_id,arrival_time_s,payload_id,payload_bytes,batch_count");
  const auto back = read_workload_csv(ss);
  ASSERT_EQ(back.size(), s.requests.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].request_id, s.requests[i].request_id);
    EXPECT_EQ(back[i].client_id, s.requests[i].client_id);
    EXPECT_EQ(back[i].payload_id, s.requests[i].payload_id);
    EXPECT_NEAR(back[i].arrival_time, s.requests[i].arrival_time, 5e-7);
  }
}

TEST(WorkloadCsv, MalformedLineIsDataError) {
  std::stringstream ss("request_id,client_id,arrival_time_s,payload_id,payload_bytes,batch_count\n1,2,x\n");
  EXPECT_THROW(read_workload_csv(ss), DataError);
}

TEST(WorkloadSpecValidation, RejectsBadFields) {
  WorkloadSpec w;
  w.num_clients = 0;
  EXPECT_THROW(w.validate(), ParameterError);
  w = WorkloadSpec{};
  w.batch_size = 0;
  EXPECT_THROW(w.validate(), ParameterError);
  w = WorkloadSpec{};
  w.duration = -1;
  EXPECT_THROW(w.validate(), ParameterError);
}

}  // namespace
}  // namespace servesim

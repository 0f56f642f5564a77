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

// Randomized invariant checks. Every suite runs at least 100 cases drawn
// from a fixed seed so failures replay.
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "servesim/analysis.h"
#include "servesim/billing.h"
#include "servesim/cold_start.h"
#include "servesim/errors.h"
#include "servesim/event_queue.h"
#include "servesim/fcfs.h"
#include "servesim/presets.h"
#include "servesim/serverless.h"
#include "servesim/simulator.h"
#include "servesim/workload.h"

namespace servesim {
namespace {

constexpr int kCases = 120;

double pick(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}
int pick_int(std::mt19937_64& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

// Small scenario on a random platform with random knobs.
ScenarioSpec random_scenario(std::mt19937_64& g, int platform) {
  static const char* kModels[] = {"mobilenet", "albert", "vgg"};
  static const char* kClouds[] = {"aws", "gcp"};
  const std::string model = kModels[pick_int(g, 0, 2)];
  const std::string cloud = kClouds[pick_int(g, 0, 1)];
  std::string id;
  switch (platform) {
    case 0: id = cloud + (pick_int(g, 0, 1) ? "-tf-" : "-ort-") + model + "-w40"; break;
    case 1: id = cloud + "-managed-" + model + "-w40"; break;
    default: id = cloud + (pick_int(g, 0, 1) ? "-cpu-" : "-gpu-") + model + "-w40"; break;
  }
  ScenarioSpec s = preset(id);
  s.workload.target_requests = 0;
  s.workload.duration = pick(g, 20.0, 150.0);
  s.workload.mmpp.lambda_high = pick(g, 1.0, 60.0);
  s.workload.mmpp.lambda_low = s.workload.mmpp.lambda_high * pick(g, 0.05, 1.0);
  s.workload.mmpp.mean_dwell_low = pick(g, 5.0, 60.0);
  s.workload.mmpp.mean_dwell_high = pick(g, 5.0, 60.0);
  s.workload.num_clients = pick_int(g, 1, 12);
  s.workload.batch_size = pick_int(g, 1, 4);
  s.workload.seed = g();
  if (auto* p = std::get_if<ServerlessPlatform>(&s.platform)) {
    p->config.memory_gb = pick(g, 0.5, 10.0);
    p->config.idle_timeout = pick(g, 1.0, 60.0);
    p->config.provisioned_concurrency = pick_int(g, 0, 1) ? pick_int(g, 1, 20) : 0;
    p->config.n_inferences = pick_int(g, 1, 3);
  } else if (auto* m = std::get_if<ManagedPlatform>(&s.platform)) {
    m->config.scale_up_delay = pick(g, 5.0, 60.0);
    m->config.autoscale_interval = pick(g, 5.0, 30.0);
    m->config.base.request_timeout = pick(g, 1.0, 30.0);
  } else {
    auto& d = std::get<DedicatedPlatform>(s.platform).config;
    d.workers = pick_int(g, 1, 8);
    d.request_timeout = pick(g, 0.5, 30.0);
    if (pick_int(g, 0, 1)) d.queue_capacity = pick_int(g, 0, 50);
  }
  return s;
}

// Send time of each invocation: the arrival of its last sample.
std::map<std::int64_t, double> invocation_arrivals(const std::vector<RequestRecord>& recs) {
  std::map<std::int64_t, double> out;
  for (const auto& r : recs)
    if (r.request_id == r.invocation_id) out[r.invocation_id] = r.arrival_time;
  return out;
}

TEST(Property, FleetAccountingUnderRandomOperations) {
  std::mt19937_64 g(101);
  for (int c = 0; c < kCases; ++c) {
    ServerlessConfig cfg;
    cfg.idle_timeout = pick(g, 0.5, 20.0);
    cfg.provisioned_concurrency = pick_int(g, 0, 4);
    cfg.per_instance_concurrency = pick_int(g, 1, 3);
    cfg.overflow_spawn_factor = pick(g, 1.0, 3.0);
    ServerlessFleet fleet(cfg);
    fleet.provision_pool(0.0);
    double now = 0.0;
    std::vector<std::int64_t> busy, cold;
    for (int step = 0; step < 200; ++step) {
      now += pick(g, 0.0, 2.0);
      const int op = pick_int(g, 0, 3);
      if (op == 0) {
        const auto route = fleet.dispatch(now);
        (route.cold ? cold : busy).push_back(route.instance_id);
        for (auto id : route.spawned) fleet.mark_warm(id, now);
      } else if (op == 1 && !cold.empty()) {
        const auto id = cold.back();
        cold.pop_back();
        fleet.mark_warm(id, now);
        busy.push_back(id);
      } else if (op == 2 && !busy.empty()) {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, busy.size() - 1)(g);
        fleet.complete(busy[k], now);
        busy.erase(busy.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        fleet.reap_idle(now);
      }
      std::int64_t live = 0, retired = 0, provisioned = 0;
      for (const auto& inst : fleet.instances()) {
        inst.retired_at ? ++retired : ++live;
        provisioned += inst.provisioned;
        if (inst.retired_at) {
          ASSERT_EQ(inst.in_flight, 0);
          ASSERT_FALSE(inst.provisioned);
        }
      }
      ASSERT_EQ(fleet.created() - fleet.retired(), fleet.live());
      ASSERT_EQ(fleet.live(), live);
      ASSERT_EQ(fleet.retired(), retired);
      ASSERT_EQ(fleet.cold_starts(), fleet.created() - provisioned);
    }
  }
}

TEST(Property, FleetAccountingAtEveryEventOfARun) {
  std::mt19937_64 g(102);
  for (int c = 0; c < kCases; ++c) {
    ScenarioSpec s = random_scenario(g, 0);
    s.output.trace_events = true;
    const auto r = run_scenario(s);
    std::int64_t provisioned = 0;
    for (const auto& inst : r.instances) provisioned += inst.provisioned;
    ASSERT_EQ(r.cold_starts, static_cast<std::int64_t>(r.instances.size()) - provisioned);
    std::vector<double> created, retired;
    for (const auto& inst : r.instances) {
      created.push_back(inst.created_at);
      if (inst.retired_at) retired.push_back(*inst.retired_at);
      ASSERT_LE(inst.created_at, inst.warm_at);
      if (inst.retired_at) ASSERT_GE(*inst.retired_at, inst.last_used);
    }
    std::sort(created.begin(), created.end());
    std::sort(retired.begin(), retired.end());
    for (const auto& line : r.trace) {
      const auto c_up = std::upper_bound(created.begin(), created.end(), line.time) - created.begin();
      const auto r_up = std::upper_bound(retired.begin(), retired.end(), line.time) - retired.begin();
      const auto live = std::count_if(r.instances.begin(), r.instances.end(),
                                      [&](const InstanceState& i) { return i.live_at(line.time); });
      ASSERT_EQ(c_up - r_up, live);
    }
  }
}

TEST(Property, RequestConservationOnEveryPlatform) {
  std::mt19937_64 g(103);
  for (int c = 0; c < kCases; ++c) {
    const ScenarioSpec s = random_scenario(g, c % 3);
    const auto events = generate_arrivals(s.workload);
    const auto r = run_scenario(s);
    ASSERT_EQ(r.records.size(), events.size()) << s.name;
    std::set<std::int64_t> ids;
    for (const auto& rec : r.records) {
      ASSERT_TRUE(ids.insert(rec.request_id).second);
      if (rec.success()) {
        ASSERT_TRUE(rec.response_time);
        ASSERT_GE(*rec.response_time, rec.arrival_time);
      } else {
        ASSERT_FALSE(rec.response_time);
      }
      if (rec.cold) ASSERT_TRUE(rec.stage_breakdown);
    }
    for (const auto& e : events) ASSERT_TRUE(ids.count(e.request_id));
  }
}

TEST(Property, BucketSumsMatchTotals) {
  std::mt19937_64 g(104);
  for (int c = 0; c < kCases; ++c) {
    const ScenarioSpec s = random_scenario(g, c % 3);
    const auto r = run_scenario(s);
    const double bucket = pick(g, 0.3, 40.0);
    const auto series = latency_timeseries(r.records, bucket, r.end_time);
    std::int64_t req = 0, ok = 0;
    for (const auto& b : series) {
      req += b.requests;
      ok += b.successes;
    }
    ASSERT_EQ(req, static_cast<std::int64_t>(r.records.size()));
    ASSERT_EQ(ok, std::count_if(r.records.begin(), r.records.end(),
                                [](const RequestRecord& x) { return x.success(); }));
    ASSERT_EQ(series.size(), static_cast<std::size_t>(std::ceil(r.end_time / bucket)));
  }
}

TEST(Property, BreakdownStagesSumToEndToEnd) {
  std::mt19937_64 g(105);
  int cold_seen = 0;
  for (int c = 0; c < kCases; ++c) {
    const ScenarioSpec s = random_scenario(g, 0);
    const auto r = run_scenario(s);
    const auto sent = invocation_arrivals(r.records);
    for (const auto& rec : r.records) {
      if (!rec.success() || !rec.cold) continue;
      ++cold_seen;
      // Batched samples also wait for their batch to fill before it is sent.
      const auto& st = *rec.stage_breakdown;
      ASSERT_NEAR(st.container + st.import + st.download + st.load + st.predict,
                  *rec.response_time - sent.at(rec.invocation_id), 1e-9);
    }
    const auto stats = coldstart_breakdown(r.records);
    if (stats.cold.count > 0) {
      const auto& m = stats.cold;
      ASSERT_NEAR(m.container + m.import + m.download + m.load + m.predict, m.e2e, 1e-9);
    }
  }
  EXPECT_GT(cold_seen, 100);
}

TEST(Property, WarmServiceTimeNonIncreasingInMemory) {
  std::mt19937_64 g(106);
  for (int c = 0; c < kCases * 5; ++c) {
    ModelProfile m;
    m.predict_warm = pick(g, 0.001, 2.0);
    RuntimeProfile rt;
    rt.predict_scale = pick(g, 0.1, 2.0);
    ServerlessConfig cfg;
    cfg.network_overhead = pick(g, 0.0, 0.1);
    cfg.memory_reference_gb = pick(g, 0.5, 4.0);
    cfg.memory_saturation_gb = pick_int(g, 0, 3) ? pick(g, 1.0, 10.0) : kUnbounded;
    const int n = pick_int(g, 1, 4), batch = pick_int(g, 1, 8);
    double a = pick(g, 0.125, 16.0), b = pick(g, 0.125, 16.0);
    if (a > b) std::swap(a, b);
    cfg.memory_gb = a;
    const double slow = warm_service_time(m, rt, cfg, n, batch);
    cfg.memory_gb = b;
    const double fast = warm_service_time(m, rt, cfg, n, batch);
    ASSERT_LE(fast, slow);
    if (a >= cfg.memory_saturation_gb) ASSERT_EQ(fast, slow);
  }
}

std::vector<RequestRecord> random_invocations(std::mt19937_64& g, int n, std::int64_t first_id) {
  std::vector<RequestRecord> out;
  for (int i = 0; i < n; ++i) {
    const int samples = pick_int(g, 1, 3);
    const double billed = pick(g, 0.0, 5.0);
    for (int k = 0; k < samples; ++k) {
      RequestRecord r;
      r.request_id = first_id + i * 3 + k;
      r.invocation_id = first_id + i * 3;
      r.billed_duration = billed;
      r.batch_count = samples;
      out.push_back(r);
    }
  }
  std::shuffle(out.begin(), out.end(), g);
  return out;
}

ServerlessPricing random_pricing(std::mt19937_64& g) {
  static const double kGranularity[] = {1e-3, 0.1, 1.0, 1e-6};
  return {pick(g, 0.01, 1.0), pick(g, 1e-6, 1e-4), kGranularity[pick_int(g, 0, 3)]};
}

TEST(Property, BillingStrictlyIncreasingInEachInput) {
  std::mt19937_64 g(107);
  for (int c = 0; c < kCases; ++c) {
    auto recs = random_invocations(g, pick_int(g, 1, 40), 0);
    const ServerlessPricing p = random_pricing(g);
    const double mem = pick(g, 0.25, 10.0);
    const double base = serverless_cost(recs, mem, p);

    auto more = recs;
    more.push_back(random_invocations(g, 1, 1'000'000).front());
    ASSERT_GT(serverless_cost(more, mem, p), base);

    // Lengthening one invocation by a full billing unit always bills more.
    auto longer = recs;
    const auto target = longer[0].invocation_id;
    for (auto& r : longer)
      if (r.invocation_id == target) r.billed_duration += p.billing_granularity;
    ASSERT_GT(serverless_cost(longer, mem, p), base);

    ASSERT_GT(serverless_cost(recs, mem * pick(g, 1.01, 2.0), p), base);
    ServerlessPricing q = p;
    q.per_million_requests *= 1.5;
    ASSERT_GT(serverless_cost(recs, mem, q), base);
    q = p;
    q.per_gb_second *= 1.5;
    bool any_billed = false;
    for (const auto& r : recs) any_billed |= r.billed_duration > 0.0;
    if (any_billed) ASSERT_GT(serverless_cost(recs, mem, q), base);
  }
}

TEST(Property, BillingAdditiveOverDisjointSets) {
  std::mt19937_64 g(108);
  for (int c = 0; c < kCases; ++c) {
    const auto a = random_invocations(g, pick_int(g, 0, 30), 0);
    const auto b = random_invocations(g, pick_int(g, 0, 30), 1'000'000);
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    const ServerlessPricing p = random_pricing(g);
    const double mem = pick(g, 0.25, 10.0);
    const double whole = serverless_cost(both, mem, p);
    ASSERT_NEAR(whole, serverless_cost(a, mem, p) + serverless_cost(b, mem, p),
                1e-12 * std::max(1.0, whole));
  }
}

TEST(Property, BillingConvergesAsGranularityShrinks) {
  std::mt19937_64 g(109);
  for (int c = 0; c < kCases; ++c) {
    const auto recs = random_invocations(g, pick_int(g, 1, 30), 0);
    const double mem = pick(g, 0.25, 10.0);
    ServerlessPricing p{0.0, pick(g, 1e-6, 1e-4), 1e-6};
    double integral = 0.0;
    std::set<std::int64_t> seen;
    for (const auto& r : recs)
      if (seen.insert(r.invocation_id).second) integral += r.billed_duration * mem * p.per_gb_second;
    const double fine = serverless_cost(recs, mem, p);
    const double bound = static_cast<double>(seen.size()) * 2e-6 * mem * p.per_gb_second;
    ASSERT_NEAR(fine, integral, bound);
    p.billing_granularity = 1.0;
    const double coarse = serverless_cost(recs, mem, p);
    ASSERT_GE(coarse, fine);
  }
}

TEST(Property, ClockMonotoneUnderRandomSchedules) {
  std::mt19937_64 g(110);
  for (int c = 0; c < kCases; ++c) {
    EventQueue q;
    double last = 0.0;
    std::uint64_t last_seq = 0;
    bool first = true;
    for (int step = 0; step < 300; ++step) {
      if (q.empty() || pick_int(g, 0, 2) > 0) {
        // Many ties: times are coarse multiples of 0.5 past now.
        SimEvent e;
        e.time = q.now() + 0.5 * pick_int(g, 0, 6);
        e.kind = static_cast<EventKind>(pick_int(g, 0, 5));
        q.schedule(e);
      } else {
        const SimEvent e = q.pop();
        ASSERT_GE(e.time, last);
        if (!first && e.time == last) ASSERT_GT(e.sequence, last_seq);
        ASSERT_EQ(q.now(), e.time);
        last = e.time;
        last_seq = e.sequence;
        first = false;
      }
      if (q.now() > 0.0) {
        SimEvent past;
        past.time = q.now() - pick(g, 1e-9, 1.0);
        ASSERT_THROW(q.schedule(past), SimLogicError);
      }
    }
  }
}

TEST(Property, DedicatedWorkerNeverIdleWithQueue) {
  std::mt19937_64 g(111);
  for (int c = 0; c < kCases; ++c) {
    const int workers = pick_int(g, 1, 6);
    const double cap = pick_int(g, 0, 1) ? kUnbounded : pick_int(g, 0, 20);
    FcfsStation st(workers, cap, pick(g, 0.5, 20.0));
    double now = 0.0;
    std::int64_t next = 0;
    for (int step = 0; step < 400; ++step) {
      now += pick(g, 0.0, 0.5);
      if (pick_int(g, 0, 1) || st.busy() == 0) {
        st.arrive({next++, now}, now);
      } else {
        st.release(now);
      }
      ASSERT_LE(st.busy(), st.workers());
      if (st.backlog() > 0) ASSERT_EQ(st.busy(), st.workers());
      if (pick_int(g, 0, 20) == 0) {
        st.add_workers(1, now);
        if (st.backlog() > 0) ASSERT_EQ(st.busy(), st.workers());
      }
    }
  }
}

TEST(Property, ServerlessLatencyDependsOnlyOnOwnPath) {
  std::mt19937_64 g(112);
  for (int c = 0; c < kCases; ++c) {
    ScenarioSpec s = random_scenario(g, 0);
    auto& p = std::get<ServerlessPlatform>(s.platform);
    p.config.per_instance_concurrency = 1;
    p.config.overflow_spawn_factor = 1.0;
    const auto r = run_scenario(s);
    ASSERT_EQ(success_ratio(r.records), 1.0);
    const auto sent = invocation_arrivals(r.records);
    for (const auto& rec : r.records) {
      const double expected =
          rec.cold ? rec.stage_breakdown->total()
                   : warm_service_time(s.model, s.runtime, p.config, p.config.n_inferences,
                                       rec.batch_count);
      ASSERT_NEAR(*rec.response_time - sent.at(rec.invocation_id), expected, 1e-9);
    }
  }
}

TEST(Property, AverageLatencyIgnoresRecordOrder) {
  std::mt19937_64 g(113);
  for (int c = 0; c < kCases; ++c) {
    std::vector<RequestRecord> recs(static_cast<std::size_t>(pick_int(g, 1, 500)));
    for (auto& r : recs) {
      r.arrival_time = pick(g, 0.0, 900.0);
      r.response_time = r.arrival_time + std::exp(pick(g, -8.0, 4.0));
      if (pick_int(g, 0, 9) == 0) {
        r.status = RequestStatus::kTimeout;
        r.response_time.reset();
      }
    }
    recs.front().status = RequestStatus::kSuccess;
    recs.front().response_time = recs.front().arrival_time + 1.0;
    const double before = average_latency(recs);
    std::shuffle(recs.begin(), recs.end(), g);
    ASSERT_EQ(average_latency(recs), before);
  }
}

}  // namespace
}  // namespace servesim

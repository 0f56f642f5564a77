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

#include "servesim/simulator.h"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>

#include "servesim/cold_start.h"
#include "servesim/errors.h"
#include "servesim/fcfs.h"
#include "servesim/rng.h"
#include "servesim/serverless.h"

namespace servesim {
namespace {

struct RunContext {
  const ScenarioSpec& spec;
  const InvocationStream& stream;
  EventQueue queue;
  std::vector<RequestRecord> records;

  std::span<const std::int64_t> samples(const RequestEvent& inv) const {
    if (inv.sample_ids.empty()) return {&inv.request_id, 1};
    return inv.sample_ids;
  }

  void succeed(const RequestEvent& inv, double response, bool cold,
               const std::optional<StageBreakdown>& stages, double predict,
               double billed, std::int64_t instance) {
    for (auto id : samples(inv)) {
      RequestRecord& r = records[id];
      r.status = RequestStatus::kSuccess;
      r.response_time = response;
      r.cold = cold;
      r.stage_breakdown = stages;
      r.predict_time = predict;
      r.billed_duration = billed;
      r.instance_id = instance;
    }
  }

  void fail(const RequestEvent& inv, RequestStatus status) {
    for (auto id : samples(inv)) {
      RequestRecord& r = records[id];
      r.status = status;
      r.response_time.reset();
    }
  }
};

class Platform {
 public:
  virtual ~Platform() = default;
  virtual void start(RunContext& ctx) = 0;
  virtual void arrive(std::int64_t inv, RunContext& ctx) = 0;
  virtual void handle(const SimEvent& ev, RunContext& ctx) = 0;
  virtual std::vector<InstanceState> instances() const = 0;
  virtual std::int64_t cold_starts() const { return 0; }
};

class ServerlessSim final : public Platform {
 public:
  explicit ServerlessSim(const ScenarioSpec& spec)
      : platform_(std::get<ServerlessPlatform>(spec.platform)),
        fleet_(platform_.config) {}

  void start(RunContext&) override { fleet_.provision_pool(0.0); }

  void arrive(std::int64_t index, RunContext& ctx) override {
    const ScenarioSpec& spec = ctx.spec;
    const RequestEvent& inv = ctx.stream.invocations[index];
    const ServerlessConfig& cfg = platform_.config;
    const double now = ctx.queue.now();
    const auto route = fleet_.dispatch(now);
    if (route.cold) {
      const auto cs = cold(route.instance_id, inv.batch_count, spec);
      const StageBreakdown& st = cs.stages;
      const double warm_at = now + st.container + st.import + st.download + st.load;
      const double done = now + cs.total;
      ctx.queue.schedule({warm_at, 0, EventKind::kInstanceWarm, route.instance_id, 0});
      ctx.queue.schedule({done, 0, EventKind::kServiceComplete, route.instance_id, 0});
      ctx.succeed(inv, done, true, st, st.predict,
                  st.import + st.download + st.load + st.predict, route.instance_id);
      for (auto extra : route.spawned) {
        const auto xs = cold(extra, 1, spec);
        const double xwarm = now + xs.stages.container + xs.stages.import +
                             xs.stages.download + xs.stages.load;
        ctx.queue.schedule({xwarm, 0, EventKind::kInstanceWarm, extra, 0});
      }
      return;
    }
    const double exec = warm_predict_time(spec.model, spec.runtime, cfg,
                                          cfg.n_inferences, inv.batch_count);
    ctx.queue.schedule({now + exec, 0, EventKind::kServiceComplete, route.instance_id, 0});
    ctx.succeed(inv, now + exec + cfg.network_overhead, false, std::nullopt, exec,
                exec, route.instance_id);
  }

  void handle(const SimEvent& ev, RunContext& ctx) override {
    const double now = ctx.queue.now();
    switch (ev.kind) {
      case EventKind::kInstanceWarm:
        fleet_.mark_warm(ev.subject, now);
        schedule_reap(ev.subject, ctx);
        break;
      case EventKind::kServiceComplete:
        fleet_.complete(ev.subject, now);
        schedule_reap(ev.subject, ctx);
        break;
      case EventKind::kIdleReap:
        fleet_.reap_if_idle(ev.subject, ev.aux, now);
        break;
      default:
        break;
    }
  }

  std::vector<InstanceState> instances() const override { return fleet_.instances(); }
  std::int64_t cold_starts() const override { return fleet_.cold_starts(); }

 private:
  ColdStartResult cold(std::int64_t instance, int batch, const ScenarioSpec& spec) const {
    CounterRng rng(spec.workload.seed, RngStream::kColdStart,
                   static_cast<std::uint64_t>(instance));
    const ServerlessConfig& cfg = platform_.config;
    return cold_start_duration(spec.model, spec.runtime, platform_.cold_start,
                               cfg.extra_download_bytes, rng, memory_factor(cfg),
                               cfg.n_inferences, batch);
  }

  void schedule_reap(std::int64_t id, RunContext& ctx) {
    const InstanceState& s = fleet_.instances()[id];
    if (s.in_flight > 0 || s.provisioned || s.retired_at) return;
    const double timeout = platform_.config.idle_timeout;
    if (!std::isfinite(timeout)) return;
    ctx.queue.schedule({ctx.queue.now() + timeout, 0, EventKind::kIdleReap, id,
                        fleet_.idle_epoch(id)});
  }

  ServerlessPlatform platform_;
  ServerlessFleet fleet_;
};

// Dedicated servers and managed endpoints share one FCFS station; managed
// endpoints add instances (worker groups) from autoscaling ticks.
class QueueingSim final : public Platform {
 public:
  QueueingSim(const DedicatedServerConfig& base, const ManagedConfig* managed)
      : base_(base),
        managed_(managed ? std::optional<ManagedConfig>(*managed) : std::nullopt),
        station_(0, base.queue_capacity, base.request_timeout,
                 managed ? managed->error_backlog_threshold : kUnbounded) {}

  void start(RunContext& ctx) override {
    const int initial = managed_ ? managed_->min_instances : 1;
    for (int i = 0; i < initial; ++i) {
      InstanceState s;
      s.instance_id = static_cast<std::int64_t>(instances_.size());
      instances_.push_back(s);
    }
    active_ = initial;
    station_.add_workers(initial * base_.workers, 0.0);
    if (managed_ && managed_->autoscale_interval <= ctx.spec.workload.duration) {
      ctx.queue.schedule({managed_->autoscale_interval, 0,
                          EventKind::kAutoscaleTick, -1, 0});
    }
  }

  void arrive(std::int64_t index, RunContext& ctx) override {
    const double now = ctx.queue.now();
    const auto out = station_.arrive({index, now}, now);
    drain_abandoned(ctx);
    switch (out.kind) {
      case FcfsStation::Outcome::Kind::kStarted:
        begin(out.started, ctx);
        break;
      case FcfsStation::Outcome::Kind::kRejected:
        ctx.fail(ctx.stream.invocations[index], out.reject_status);
        break;
      case FcfsStation::Outcome::Kind::kQueued:
        break;
    }
  }

  void handle(const SimEvent& ev, RunContext& ctx) override {
    const double now = ctx.queue.now();
    switch (ev.kind) {
      case EventKind::kServiceComplete: {
        const RequestEvent& inv = ctx.stream.invocations[ev.subject];
        const double service = now - started_at_[ev.subject];
        --load_[ev.aux];
        ctx.succeed(inv, now, false, std::nullopt, service, service, ev.aux);
        ++instances_[ev.aux].requests_served;
        instances_[ev.aux].last_used = now;
        instances_[ev.aux].busy_until = now;
        for (const auto& s : station_.release(now)) begin(s, ctx);
        drain_abandoned(ctx);
        break;
      }
      case EventKind::kAutoscaleTick: {
        const auto action = managed_autoscale_step(
            now, station_.backlog(), active_, pending_, *managed_);
        for (int i = 0; i < action.to_start; ++i) {
          InstanceState s;
          s.instance_id = static_cast<std::int64_t>(instances_.size());
          s.created_at = now;
          s.warm_at = now + managed_->scale_up_delay;
          s.busy_until = s.warm_at;
          s.last_used = s.warm_at;
          instances_.push_back(s);
          ++pending_;
          ctx.queue.schedule({s.warm_at, 0, EventKind::kInstanceWarm, s.instance_id, 0});
        }
        const double next = now + managed_->autoscale_interval;
        if (next <= ctx.spec.workload.duration) {
          ctx.queue.schedule({next, 0, EventKind::kAutoscaleTick, -1, 0});
        }
        break;
      }
      case EventKind::kInstanceWarm:
        --pending_;
        ++active_;
        for (const auto& s : station_.add_workers(base_.workers, now)) begin(s, ctx);
        drain_abandoned(ctx);
        break;
      default:
        break;
    }
  }

  std::vector<InstanceState> instances() const override { return instances_; }
  void reserve(std::size_t n) { started_at_.assign(n, 0.0); }

 private:
  // Picks the serving instance for accounting: the earliest-created warm
  // instance with a free worker slot.
  std::int64_t assign_instance(double now) {
    for (auto& s : instances_) {
      if (s.warm_at > now) continue;
      if (load_[s.instance_id] < base_.workers) {
        ++load_[s.instance_id];
        return s.instance_id;
      }
    }
    throw SimLogicError("no instance has a free worker");
  }

  void begin(const FcfsStation::Start& s, RunContext& ctx) {
    const RequestEvent& inv = ctx.stream.invocations[s.job.invocation];
    double service = base_.service_time * inv.batch_count;
    if (base_.distribution == ServiceDistribution::kExponential) {
      const CounterRng rng(ctx.spec.workload.seed, RngStream::kService);
      const double u = rng.uniform_at(static_cast<std::uint64_t>(s.job.invocation));
      service *= -std::log1p(-u);
    }
    load_.resize(instances_.size(), 0);
    const auto instance = assign_instance(s.start);
    started_at_[s.job.invocation] = s.start;
    ctx.queue.schedule({s.start + service, 0, EventKind::kServiceComplete,
                        s.job.invocation, instance});
  }

  void drain_abandoned(RunContext& ctx) {
    for (const auto& j : station_.take_abandoned()) {
      ctx.fail(ctx.stream.invocations[j.invocation], RequestStatus::kTimeout);
    }
  }

  DedicatedServerConfig base_;
  std::optional<ManagedConfig> managed_;
  FcfsStation station_;
  std::vector<InstanceState> instances_;
  std::vector<int> load_;
  std::vector<double> started_at_;
  int active_ = 0;
  int pending_ = 0;
};

std::string describe(const SimEvent& ev, const RunContext& ctx) {
  char buf[96];
  if (ev.kind == EventKind::kRequestArrival) {
    const auto& inv = ctx.stream.invocations[ev.subject];
    std::snprintf(buf, sizeof(buf), "request=%" PRId64 " client=%d batch=%d",
                  inv.request_id, inv.client_id, inv.batch_count);
  } else if (ev.kind == EventKind::kWorkloadEnd || ev.kind == EventKind::kAutoscaleTick) {
    buf[0] = '\0';
  } else {
    std::snprintf(buf, sizeof(buf), "subject=%" PRId64 " aux=%" PRId64, ev.subject,
                  ev.aux);
  }
  return buf;
}

}  // namespace

SimulationResult run_scenario(const ScenarioSpec& spec) {
  spec.validate();
  const InvocationStream stream = build_invocations(spec.workload);
  RunContext ctx{spec, stream, EventQueue{}, {}};

  ctx.records.resize(stream.requests.size());
  for (const auto& inv : stream.invocations) {
    for (auto id : ctx.samples(inv)) {
      const RequestEvent& req = stream.requests[id];
      RequestRecord& r = ctx.records[id];
      r.request_id = req.request_id;
      r.client_id = req.client_id;
      r.arrival_time = req.arrival_time;
      r.invocation_id = inv.request_id;
      r.batch_count = inv.batch_count;
    }
  }

  std::unique_ptr<Platform> platform;
  QueueingSim* queueing = nullptr;
  if (const auto* p = std::get_if<ServerlessPlatform>(&spec.platform)) {
    (void)p;
    platform = std::make_unique<ServerlessSim>(spec);
  } else if (const auto* m = std::get_if<ManagedPlatform>(&spec.platform)) {
    auto q = std::make_unique<QueueingSim>(m->config.base, &m->config);
    queueing = q.get();
    platform = std::move(q);
  } else {
    const auto& d = std::get<DedicatedPlatform>(spec.platform);
    auto q = std::make_unique<QueueingSim>(d.config, nullptr);
    queueing = q.get();
    platform = std::move(q);
  }
  if (queueing) queueing->reserve(stream.invocations.size());

  for (std::size_t i = 0; i < stream.invocations.size(); ++i) {
    ctx.queue.schedule({stream.invocations[i].arrival_time, 0,
                        EventKind::kRequestArrival, static_cast<std::int64_t>(i), 0});
  }
  ctx.queue.schedule({spec.workload.duration, 0, EventKind::kWorkloadEnd, -1, 0});
  platform->start(ctx);

  SimulationResult result;
  while (!ctx.queue.empty()) {
    const SimEvent ev = ctx.queue.pop();
    if (spec.output.trace_events) {
      result.trace.push_back({ev.time, ev.sequence, ev.kind, describe(ev, ctx)});
    }
    if (ev.kind == EventKind::kRequestArrival) {
      platform->arrive(ev.subject, ctx);
    } else {
      platform->handle(ev, ctx);
    }
  }

  result.event_count = ctx.queue.popped();
  result.invocations = static_cast<std::int64_t>(stream.invocations.size());
  result.cold_starts = platform->cold_starts();
  result.instances = platform->instances();
  result.bursts = stream.bursts;
  result.end_time = spec.workload.duration;
  for (const auto& r : ctx.records) {
    if (r.response_time) result.end_time = std::max(result.end_time, *r.response_time);
  }
  result.records = std::move(ctx.records);
  return result;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceLine>& trace) {
  out << "time_s,sequence,kind,detail\n";
  char buf[64];
  for (const auto& t : trace) {
    std::snprintf(buf, sizeof(buf), "%.6f,%" PRIu64 ",", t.time, t.sequence);
    out << buf << to_string(t.kind) << ',' << t.detail << '\n';
  }
}

}  // namespace servesim

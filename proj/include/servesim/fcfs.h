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

#include <cstdint>
#include <deque>
#include <vector>

#include "servesim/profiles.h"
#include "servesim/records.h"

namespace servesim {

// Shared FCFS queue in front of a pool of identical workers. Clients abandon
// a request once it has waited request_timeout; abandoned requests never
// occupy a worker.
class FcfsStation {
 public:
  struct Job {
    std::int64_t invocation = 0;
    double arrival = 0.0;
  };
  struct Start {
    Job job;
    double start = 0.0;
  };
  struct Outcome {
    enum class Kind { kStarted, kQueued, kRejected } kind = Kind::kQueued;
    RequestStatus reject_status = RequestStatus::kQueueOverflow;
    Start started;
  };

  FcfsStation(int workers, double queue_capacity, double request_timeout,
              double backlog_reject_threshold = kUnbounded);

  // server_dispatch: admission + immediate start if a worker is free.
  Outcome arrive(const Job& job, double now);
  // A worker finished at `now`; returns the next job it starts, if any.
  std::vector<Start> release(double now);
  // Capacity grew (managed scale-up); returns jobs started on new workers.
  std::vector<Start> add_workers(int n, double now);

  // Jobs abandoned since the last call.
  std::vector<Job> take_abandoned();

  std::size_t backlog() const { return queue_.size(); }
  int busy() const { return busy_; }
  int workers() const { return workers_; }

 private:
  void purge_expired(double now);
  std::vector<Start> fill(double now);

  int workers_;
  int busy_ = 0;
  double queue_capacity_;
  double request_timeout_;
  double backlog_reject_threshold_;
  std::deque<Job> queue_;
  std::vector<Job> abandoned_;
};

// Periodic managed-endpoint scaling decision.
struct ScalingAction {
  int desired = 1;
  int to_start = 0;
};
ScalingAction managed_autoscale_step(double now, std::size_t backlog,
                                     int active_instances, int pending_instances,
                                     const ManagedConfig& config);

}  // namespace servesim

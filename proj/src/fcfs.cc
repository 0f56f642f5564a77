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

#include "servesim/fcfs.h"

#include <algorithm>
#include <cmath>

#include "servesim/errors.h"

namespace servesim {

FcfsStation::FcfsStation(int workers, double queue_capacity,
                         double request_timeout, double backlog_reject_threshold)
    : workers_(workers),
      queue_capacity_(queue_capacity),
      request_timeout_(request_timeout),
      backlog_reject_threshold_(backlog_reject_threshold) {
  if (workers < 0) throw ParameterError("workers must be >= 0");
}

void FcfsStation::purge_expired(double now) {
  while (!queue_.empty() && now - queue_.front().arrival > request_timeout_) {
    abandoned_.push_back(queue_.front());
    queue_.pop_front();
  }
}

FcfsStation::Outcome FcfsStation::arrive(const Job& job, double now) {
  purge_expired(now);
  Outcome out;
  const auto backlog = static_cast<double>(queue_.size());
  if (backlog > backlog_reject_threshold_) {
    out.kind = Outcome::Kind::kRejected;
    out.reject_status = RequestStatus::kBacklogRejected;
    return out;
  }
  if (busy_ < workers_ && queue_.empty()) {
    ++busy_;
    out.kind = Outcome::Kind::kStarted;
    out.started = {job, now};
    return out;
  }
  if (backlog >= queue_capacity_) {
    out.kind = Outcome::Kind::kRejected;
    out.reject_status = RequestStatus::kQueueOverflow;
    return out;
  }
  queue_.push_back(job);
  out.kind = Outcome::Kind::kQueued;
  return out;
}

std::vector<FcfsStation::Start> FcfsStation::fill(double now) {
  std::vector<Start> started;
  while (busy_ < workers_) {
    purge_expired(now);
    if (queue_.empty()) break;
    ++busy_;
    started.push_back({queue_.front(), now});
    queue_.pop_front();
  }
  return started;
}

std::vector<FcfsStation::Start> FcfsStation::release(double now) {
  if (busy_ <= 0) throw SimLogicError("release with no busy worker");
  --busy_;
  return fill(now);
}

std::vector<FcfsStation::Start> FcfsStation::add_workers(int n, double now) {
  workers_ += n;
  return fill(now);
}

std::vector<FcfsStation::Job> FcfsStation::take_abandoned() {
  std::vector<Job> out;
  out.swap(abandoned_);
  return out;
}

ScalingAction managed_autoscale_step(double /*now*/, std::size_t backlog,
                                     int active_instances, int pending_instances,
                                     const ManagedConfig& config) {
  ScalingAction a;
  const double need =
      std::ceil(static_cast<double>(backlog) / config.target_backlog_per_instance);
  a.desired = std::max(config.min_instances,
                       static_cast<int>(std::min<double>(need, config.max_instances)));
  a.to_start = std::max(0, a.desired - active_instances - pending_instances);
  return a;
}

}  // namespace servesim

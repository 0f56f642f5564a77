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
#include <set>
#include <utility>
#include <vector>

#include "servesim/profiles.h"

namespace servesim {

// Instance bookkeeping for one serverless function. Pure state machine with
// no notion of events; ServerlessPlatform drives it from the event loop.
class ServerlessFleet {
 public:
  explicit ServerlessFleet(ServerlessConfig config);

  struct Route {
    std::int64_t instance_id = -1;
    bool cold = false;
    // Additional instances spawned without a request (spawn factor > 1).
    std::vector<std::int64_t> spawned;
  };

  // Pre-warms provisioned_concurrency instances at `now`.
  void provision_pool(double now);

  // Routes to the most recently used warm instance with spare concurrency,
  // else creates ceil(overflow_spawn_factor) instances and routes to the
  // first. Created instances are not warm until mark_warm().
  Route dispatch(double now);

  void mark_warm(std::int64_t id, double warm_at);
  void complete(std::int64_t id, double now);

  // Retires every non-provisioned instance idle for at least idle_timeout.
  std::vector<std::int64_t> reap_idle(double now);
  // Retires `id` if it has been idle since its idle epoch `epoch` began.
  bool reap_if_idle(std::int64_t id, std::int64_t epoch, double now);
  std::int64_t idle_epoch(std::int64_t id) const { return epochs_.at(id); }

  const std::vector<InstanceState>& instances() const { return instances_; }
  std::vector<InstanceState>& instances() { return instances_; }
  const ServerlessConfig& config() const { return config_; }
  std::int64_t created() const { return static_cast<std::int64_t>(instances_.size()); }
  std::int64_t retired() const { return retired_; }
  std::int64_t live() const { return created() - retired_; }
  std::int64_t cold_starts() const { return cold_starts_; }
  std::size_t available() const { return available_.size(); }

 private:
  std::int64_t create(double now, bool provisioned);
  void make_available(std::int64_t id);
  void retire(std::int64_t id, double now);

  ServerlessConfig config_;
  std::vector<InstanceState> instances_;
  std::vector<bool> warm_;
  std::vector<std::int64_t> epochs_;
  std::set<std::pair<double, std::int64_t>> available_;  // (last_used, id)
  std::int64_t retired_ = 0;
  std::int64_t cold_starts_ = 0;
};

}  // namespace servesim

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

#include "servesim/serverless.h"

#include <cmath>

#include "servesim/errors.h"

namespace servesim {

ServerlessFleet::ServerlessFleet(ServerlessConfig config)
    : config_(std::move(config)) {
  config_.validate();
}

std::int64_t ServerlessFleet::create(double now, bool provisioned) {
  InstanceState s;
  s.instance_id = static_cast<std::int64_t>(instances_.size());
  s.created_at = now;
  s.warm_at = now;
  s.busy_until = now;
  s.last_used = now;
  s.provisioned = provisioned;
  instances_.push_back(s);
  warm_.push_back(false);
  epochs_.push_back(0);
  if (!provisioned) ++cold_starts_;
  return s.instance_id;
}

void ServerlessFleet::provision_pool(double now) {
  for (int i = 0; i < config_.provisioned_concurrency; ++i) {
    const auto id = create(now, /*provisioned=*/true);
    mark_warm(id, now);
  }
}

void ServerlessFleet::make_available(std::int64_t id) {
  available_.emplace(instances_[id].last_used, id);
}

ServerlessFleet::Route ServerlessFleet::dispatch(double now) {
  Route r;
  if (!available_.empty()) {
    auto it = std::prev(available_.end());
    r.instance_id = it->second;
    available_.erase(it);
    InstanceState& s = instances_[r.instance_id];
    ++s.in_flight;
    ++s.requests_served;
    ++epochs_[r.instance_id];
    if (s.in_flight < config_.per_instance_concurrency) make_available(r.instance_id);
    return r;
  }
  const auto n = static_cast<int>(std::ceil(config_.effective_spawn_factor()));
  r.cold = true;
  r.instance_id = create(now, false);
  InstanceState& s = instances_[r.instance_id];
  s.in_flight = 1;
  s.requests_served = 1;
  s.cold_starts_served = 1;
  for (int i = 1; i < n; ++i) r.spawned.push_back(create(now, false));
  return r;
}

void ServerlessFleet::mark_warm(std::int64_t id, double warm_at) {
  InstanceState& s = instances_.at(id);
  if (s.retired_at) return;
  warm_[id] = true;
  s.warm_at = warm_at;
  if (s.in_flight < config_.per_instance_concurrency) {
    available_.erase({s.last_used, id});
    if (s.in_flight == 0) s.last_used = warm_at;
    make_available(id);
  }
}

void ServerlessFleet::complete(std::int64_t id, double now) {
  InstanceState& s = instances_.at(id);
  if (s.in_flight <= 0) throw SimLogicError("completion on an idle instance");
  available_.erase({s.last_used, id});
  --s.in_flight;
  s.last_used = now;
  s.busy_until = std::max(s.busy_until, now);
  if (warm_[id]) make_available(id);
  if (s.in_flight == 0) ++epochs_[id];
}

void ServerlessFleet::retire(std::int64_t id, double now) {
  InstanceState& s = instances_[id];
  available_.erase({s.last_used, id});
  s.retired_at = now;
  ++retired_;
}

std::vector<std::int64_t> ServerlessFleet::reap_idle(double now) {
  std::vector<std::int64_t> out;
  for (auto& s : instances_) {
    if (s.retired_at || s.provisioned || s.in_flight > 0 || !warm_[s.instance_id])
      continue;
    if (now - s.last_used >= config_.idle_timeout) {
      retire(s.instance_id, now);
      out.push_back(s.instance_id);
    }
  }
  return out;
}

bool ServerlessFleet::reap_if_idle(std::int64_t id, std::int64_t epoch, double now) {
  InstanceState& s = instances_.at(id);
  if (s.retired_at || s.provisioned || s.in_flight > 0 || !warm_[id]) return false;
  if (epochs_[id] != epoch) return false;
  if (now - s.last_used < config_.idle_timeout) return false;
  retire(id, now);
  return true;
}

}  // namespace servesim

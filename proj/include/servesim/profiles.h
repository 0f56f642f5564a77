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
#include <limits>
#include <optional>
#include <string>

namespace servesim {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct ModelProfile {
  std::string name = "model";
  double artifact_bytes = 16e6;
  bool packed_in_image = false;
  double predict_warm = 0.04;        // s per sample at reference memory
  double predict_cold_extra = 0.0;   // s, first prediction on a fresh runtime

  void validate() const;
  bool operator==(const ModelProfile&) const = default;
};

struct RuntimeProfile {
  std::string name = "runtime";
  double import_time = 0.0;
  double load_time = 0.0;
  double predict_scale = 1.0;

  void validate() const;
  bool operator==(const RuntimeProfile&) const = default;
};

struct ColdStartProfile {
  double container_overhead = 0.0;     // s; transmission + container start
  double download_bandwidth = 125e6;   // bytes/s from the artifact store
  double download_latency = 0.0;       // s per download, size independent
  double image_pull_probability = 0.0;
  double image_pull_time = 0.0;        // s per GB (1e9 bytes) of image
  double container_image_bytes = 0.0;

  void validate() const;
  bool operator==(const ColdStartProfile&) const = default;
};

struct ServerlessConfig {
  double memory_gb = 2.0;
  double idle_timeout = 600.0;
  int provisioned_concurrency = 0;
  int per_instance_concurrency = 1;
  double memory_reference_gb = 2.0;
  double memory_saturation_gb = kUnbounded;
  // Unset means the default: 1.0 without a provisioned pool, 1.5 with one.
  std::optional<double> overflow_spawn_factor;
  double network_overhead = 0.0;     // s, client-visible transmission (warm)
  int n_inferences = 1;
  double extra_download_bytes = 0.0;

  double effective_spawn_factor() const {
    if (overflow_spawn_factor) return *overflow_spawn_factor;
    return provisioned_concurrency > 0 ? 1.5 : 1.0;
  }
  void validate() const;
  bool operator==(const ServerlessConfig&) const = default;
};

enum class ServiceDistribution { kDeterministic, kExponential };

struct DedicatedServerConfig {
  int workers = 1;
  double service_time = 0.02;          // s per sample (mean if exponential)
  ServiceDistribution distribution = ServiceDistribution::kDeterministic;
  double queue_capacity = kUnbounded;  // waiting requests, excluding in service
  double request_timeout = 60.0;       // s of queueing before the client gives up

  void validate() const;
  bool operator==(const DedicatedServerConfig&) const = default;
};

struct ManagedConfig {
  DedicatedServerConfig base;          // per instance
  int min_instances = 1;
  double target_backlog_per_instance = 50.0;
  double scale_up_delay = 240.0;
  double error_backlog_threshold = kUnbounded;
  double autoscale_interval = 60.0;
  int max_instances = 64;

  void validate() const;
  bool operator==(const ManagedConfig&) const = default;
};

struct InstanceState {
  std::int64_t instance_id = 0;
  double created_at = 0.0;
  double warm_at = 0.0;
  double busy_until = 0.0;
  double last_used = 0.0;
  std::optional<double> retired_at;
  std::int64_t cold_starts_served = 0;
  std::int64_t requests_served = 0;
  int in_flight = 0;
  bool provisioned = false;

  bool live_at(double t) const {
    return created_at <= t && (!retired_at || t < *retired_at);
  }
};

}  // namespace servesim

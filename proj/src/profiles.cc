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

#include "servesim/profiles.h"

#include <cmath>

#include "servesim/errors.h"
#include "servesim/records.h"

namespace servesim {
namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

}  // namespace

void ModelProfile::validate() const {
  require(artifact_bytes > 0.0, "model.artifact_bytes", "must be > 0");
  require(predict_warm >= 0.0, "model.predict_warm", "must be >= 0");
  require(predict_cold_extra >= 0.0, "model.predict_cold_extra", "must be >= 0");
}

void RuntimeProfile::validate() const {
  require(import_time >= 0.0, "runtime.import_time", "must be >= 0");
  require(load_time >= 0.0, "runtime.load_time", "must be >= 0");
  require(predict_scale >= 0.0, "runtime.predict_scale", "must be >= 0");
}

void ColdStartProfile::validate() const {
  require(container_overhead >= 0.0, "cold_start.container_overhead", "must be >= 0");
  require(download_bandwidth > 0.0, "cold_start.download_bandwidth", "must be > 0");
  require(download_latency >= 0.0, "cold_start.download_latency", "must be >= 0");
  require(image_pull_probability >= 0.0 && image_pull_probability <= 1.0,
          "cold_start.image_pull_probability", "must be in [0, 1]");
  require(image_pull_time >= 0.0, "cold_start.image_pull_time", "must be >= 0");
  require(container_image_bytes >= 0.0, "cold_start.container_image_bytes",
          "must be >= 0");
}

void ServerlessConfig::validate() const {
  require(memory_gb > 0.0 && std::isfinite(memory_gb), "platform.memory_gb",
          "must be > 0");
  require(idle_timeout > 0.0, "platform.idle_timeout", "must be > 0");
  require(provisioned_concurrency >= 0, "platform.provisioned_concurrency",
          "must be >= 0");
  require(per_instance_concurrency >= 1, "platform.per_instance_concurrency",
          "must be >= 1");
  require(memory_reference_gb > 0.0, "platform.memory_reference_gb", "must be > 0");
  require(memory_saturation_gb > 0.0, "platform.memory_saturation_gb",
          "must be > 0");
  require(!overflow_spawn_factor || *overflow_spawn_factor >= 1.0,
          "platform.overflow_spawn_factor", "must be >= 1");
  require(network_overhead >= 0.0, "platform.network_overhead", "must be >= 0");
  require(n_inferences >= 1, "platform.n_inferences", "must be >= 1");
  require(extra_download_bytes >= 0.0, "platform.extra_download_bytes",
          "must be >= 0");
}

void DedicatedServerConfig::validate() const {
  require(workers >= 1, "platform.workers", "must be >= 1");
  require(service_time > 0.0, "platform.service_time", "must be > 0");
  require(queue_capacity >= 0.0, "platform.queue_capacity", "must be >= 0");
  require(request_timeout > 0.0, "platform.request_timeout", "must be > 0");
}

void ManagedConfig::validate() const {
  base.validate();
  require(min_instances >= 1, "platform.min_instances", "must be >= 1");
  require(max_instances >= min_instances, "platform.max_instances",
          "must be >= min_instances");
  require(target_backlog_per_instance > 0.0, "platform.target_backlog_per_instance",
          "must be > 0");
  require(scale_up_delay > 0.0, "platform.scale_up_delay", "must be > 0");
  require(error_backlog_threshold >= 0.0, "platform.error_backlog_threshold",
          "must be >= 0");
  require(autoscale_interval > 0.0, "platform.autoscale_interval", "must be > 0");
}

std::string to_string(RequestStatus s) {
  switch (s) {
    case RequestStatus::kSuccess: return "success";
    case RequestStatus::kTimeout: return "timeout";
    case RequestStatus::kQueueOverflow: return "queue_overflow";
    case RequestStatus::kBacklogRejected: return "backlog_rejected";
  }
  return "success";
}

RequestStatus request_status_from_string(const std::string& s) {
  if (s == "success") return RequestStatus::kSuccess;
  if (s == "timeout") return RequestStatus::kTimeout;
  if (s == "queue_overflow") return RequestStatus::kQueueOverflow;
  if (s == "backlog_rejected") return RequestStatus::kBacklogRejected;
  throw DataError("unknown request status '" + s + "'");
}

}  // namespace servesim

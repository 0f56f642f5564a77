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
#include <optional>
#include <string>

namespace servesim {

enum class RequestStatus { kSuccess, kTimeout, kQueueOverflow, kBacklogRejected };

std::string to_string(RequestStatus s);
RequestStatus request_status_from_string(const std::string& s);

// Cold-start stage durations in seconds. `container` includes any image pull.
struct StageBreakdown {
  double container = 0.0;
  double import = 0.0;
  double download = 0.0;
  double load = 0.0;
  double predict = 0.0;

  double total() const { return container + import + download + load + predict; }
  bool operator==(const StageBreakdown&) const = default;
};

struct RequestRecord {
  std::int64_t request_id = 0;
  int client_id = 0;
  std::int64_t invocation_id = 0;  // request_id of the invocation's last sample
  double arrival_time = 0.0;
  std::optional<double> response_time;
  RequestStatus status = RequestStatus::kSuccess;
  bool cold = false;
  std::optional<StageBreakdown> stage_breakdown;
  double predict_time = 0.0;       // instance-side inference time
  double billed_duration = 0.0;    // per invocation, repeated on each sample
  std::int64_t instance_id = -1;
  int batch_count = 1;

  bool success() const { return status == RequestStatus::kSuccess; }
  double latency() const { return response_time.value_or(arrival_time) - arrival_time; }
  bool operator==(const RequestRecord&) const = default;
};

}  // namespace servesim

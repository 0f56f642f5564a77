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

#include <span>

#include "servesim/profiles.h"
#include "servesim/records.h"

namespace servesim {

struct ServerlessPricing {
  double per_million_requests = 0.20;
  double per_gb_second = 1.66667e-5;
  double billing_granularity = 0.001;  // s; durations round up per invocation

  void validate() const;
  bool operator==(const ServerlessPricing&) const = default;
};

struct HourlyPricing {
  double per_hour = 0.0;

  void validate() const;
  bool operator==(const HourlyPricing&) const = default;
};

// Billed units of `granularity` for one invocation; exact integer rounding on
// microsecond-quantized durations. Throws DataError for negative durations.
long long billed_units(double duration, double granularity);

// Invocations are identified by RequestRecord::invocation_id; each is billed
// once, for its billed_duration, regardless of how many samples it carried.
double serverless_cost(std::span<const RequestRecord> records, double memory_gb,
                       const ServerlessPricing& pricing);

double dedicated_server_cost(double duration, const HourlyPricing& pricing);

// Each instance is billed from created_at (provisioning start) until
// retired_at, or until run_end if it was still live.
double managed_service_cost(std::span<const InstanceState> instances,
                            double run_end, const HourlyPricing& pricing);

}  // namespace servesim

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

#include "servesim/billing.h"

#include <cmath>
#include <unordered_set>

#include "servesim/errors.h"

namespace servesim {

void ServerlessPricing::validate() const {
  if (!(per_million_requests >= 0.0))
    throw ValidationError("pricing.per_million_requests", "must be >= 0");
  if (!(per_gb_second >= 0.0))
    throw ValidationError("pricing.per_gb_second", "must be >= 0");
  if (!(billing_granularity > 0.0))
    throw ValidationError("pricing.billing_granularity", "must be > 0");
}

void HourlyPricing::validate() const {
  if (!(per_hour >= 0.0)) throw ValidationError("pricing.per_hour", "must be >= 0");
}

long long billed_units(double duration, double granularity) {
  if (duration < 0.0 || std::isnan(duration))
    throw DataError("negative billed duration");
  const long long us = std::llround(duration * 1e6);
  const long long gus = std::max<long long>(1, std::llround(granularity * 1e6));
  return (us + gus - 1) / gus;
}

double serverless_cost(std::span<const RequestRecord> records, double memory_gb,
                       const ServerlessPricing& pricing) {
  std::unordered_set<std::int64_t> seen;
  long long invocations = 0;
  long long units = 0;
  for (const auto& r : records) {
    if (!seen.insert(r.invocation_id).second) continue;
    ++invocations;
    units += billed_units(r.billed_duration, pricing.billing_granularity);
  }
  const double granularity =
      static_cast<double>(std::max<long long>(
          1, std::llround(pricing.billing_granularity * 1e6))) / 1e6;
  return static_cast<double>(units) * granularity * memory_gb *
             pricing.per_gb_second +
         static_cast<double>(invocations) * pricing.per_million_requests / 1e6;
}

double dedicated_server_cost(double duration, const HourlyPricing& pricing) {
  if (duration < 0.0) throw DataError("negative run duration");
  return duration / 3600.0 * pricing.per_hour;
}

double managed_service_cost(std::span<const InstanceState> instances,
                            double run_end, const HourlyPricing& pricing) {
  double seconds = 0.0;
  for (const auto& s : instances) {
    const double end = s.retired_at.value_or(run_end);
    if (end < s.created_at) throw DataError("instance retired before creation");
    seconds += end - s.created_at;
  }
  return seconds / 3600.0 * pricing.per_hour;
}

}  // namespace servesim

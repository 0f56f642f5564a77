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

#include <string>
#include <variant>
#include <vector>

#include "servesim/billing.h"
#include "servesim/profiles.h"
#include "servesim/workload.h"

namespace servesim {

struct ServerlessPlatform {
  ServerlessConfig config;
  ColdStartProfile cold_start;
  bool operator==(const ServerlessPlatform&) const = default;
};
struct ManagedPlatform {
  ManagedConfig config;
  bool operator==(const ManagedPlatform&) const = default;
};
struct DedicatedPlatform {
  DedicatedServerConfig config;
  bool operator==(const DedicatedPlatform&) const = default;
};

using PlatformSpec = std::variant<ServerlessPlatform, ManagedPlatform, DedicatedPlatform>;
using PricingSpec = std::variant<ServerlessPricing, HourlyPricing>;

std::string platform_kind(const PlatformSpec& p);  // serverless|managed|dedicated

struct OutputControls {
  double latency_bucket = 10.0;
  double instance_bucket = 60.0;
  bool trace_events = false;
  bool operator==(const OutputControls&) const = default;
};

struct ScenarioSpec {
  std::string name = "custom";
  std::string workload_label;  // e.g. "w40"; used to flag mismatched comparisons
  WorkloadSpec workload;
  PlatformSpec platform = ServerlessPlatform{};
  ModelProfile model;
  RuntimeProfile runtime;
  PricingSpec pricing = ServerlessPricing{};
  OutputControls output;

  // Field-level checks (ValidationError) then cross-field checks
  // (ConfigError, e.g. hourly pricing on a serverless platform).
  void validate() const;
  bool operator==(const ScenarioSpec&) const = default;
};

enum class SweepAxis {
  kMemoryGb,
  kProvisionedConcurrency,
  kBatchSize,
  kContainerImageBytes,
  kExtraDownloadBytes,
  kNInferences,
};

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& s);

struct SweepSpec {
  ScenarioSpec base;
  SweepAxis axis = SweepAxis::kMemoryGb;
  std::vector<double> values;

  void validate() const;
};

// Copy of `base` with the axis set to `value`. Throws ValidationError when
// the axis does not apply to the platform or the value is out of domain.
ScenarioSpec apply_axis(const ScenarioSpec& base, SweepAxis axis, double value);

}  // namespace servesim

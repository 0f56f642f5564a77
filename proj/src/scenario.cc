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

#include "servesim/scenario.h"

#include <cmath>
#include <string>

#include "servesim/errors.h"

namespace servesim {
namespace {

// Workload checks raise ParameterError("<field> must ..."); re-raise with
// the dotted path rooted at the scenario.
[[noreturn]] void rethrow_workload(const ParameterError& e) {
  const std::string what = e.what();
  const auto space = what.find(' ');
  std::string field = what.substr(0, space);
  if (field.rfind("workload.", 0) != 0) field = "workload." + field;
  throw ValidationError(field, space == std::string::npos ? what : what.substr(space + 1));
}

bool is_integral(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace

std::string platform_kind(const PlatformSpec& p) {
  if (std::holds_alternative<ServerlessPlatform>(p)) return "serverless";
  if (std::holds_alternative<ManagedPlatform>(p)) return "managed";
  return "dedicated";
}

void ScenarioSpec::validate() const {
  try {
    workload.validate();
  } catch (const ParameterError& e) {
    rethrow_workload(e);
  }
  model.validate();
  runtime.validate();
  if (!(output.latency_bucket > 0.0))
    throw ValidationError("output.latency_bucket", "must be > 0");
  if (!(output.instance_bucket > 0.0))
    throw ValidationError("output.instance_bucket", "must be > 0");

  std::visit([](const auto& p) { p.config.validate(); }, platform);
  if (const auto* s = std::get_if<ServerlessPlatform>(&platform)) s->cold_start.validate();
  std::visit([](const auto& p) { p.validate(); }, pricing);

  const bool serverless = std::holds_alternative<ServerlessPlatform>(platform);
  const bool per_request = std::holds_alternative<ServerlessPricing>(pricing);
  if (serverless != per_request) {
    throw ConfigError("pricing kind '" +
                      std::string(per_request ? "serverless" : "hourly") +
                      "' does not match platform '" + platform_kind(platform) + "'");
  }
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kMemoryGb: return "memory_gb";
    case SweepAxis::kProvisionedConcurrency: return "provisioned_concurrency";
    case SweepAxis::kBatchSize: return "batch_size";
    case SweepAxis::kContainerImageBytes: return "container_image_bytes";
    case SweepAxis::kExtraDownloadBytes: return "extra_download_bytes";
    case SweepAxis::kNInferences: return "n_inferences";
  }
  return "memory_gb";
}

SweepAxis sweep_axis_from_string(const std::string& s) {
  for (auto a : {SweepAxis::kMemoryGb, SweepAxis::kProvisionedConcurrency,
                 SweepAxis::kBatchSize, SweepAxis::kContainerImageBytes,
                 SweepAxis::kExtraDownloadBytes, SweepAxis::kNInferences}) {
    if (to_string(a) == s) return a;
  }
  throw ValidationError("axis", "unknown sweep axis '" + s + "'");
}

ScenarioSpec apply_axis(const ScenarioSpec& base, SweepAxis axis, double value) {
  ScenarioSpec out = base;
  const std::string field = "values";
  if (axis == SweepAxis::kBatchSize) {
    if (!is_integral(value) || value < 1)
      throw ValidationError(field, "batch_size values must be integers >= 1");
    out.workload.batch_size = static_cast<int>(value);
    return out;
  }
  auto* sp = std::get_if<ServerlessPlatform>(&out.platform);
  if (!sp) {
    throw ValidationError("axis", to_string(axis) + " applies only to serverless platforms");
  }
  switch (axis) {
    case SweepAxis::kMemoryGb:
      if (!(value > 0.0) || !std::isfinite(value))
        throw ValidationError(field, "memory_gb values must be > 0");
      sp->config.memory_gb = value;
      break;
    case SweepAxis::kProvisionedConcurrency:
      if (!is_integral(value) || value < 0)
        throw ValidationError(field, "provisioned_concurrency values must be integers >= 0");
      sp->config.provisioned_concurrency = static_cast<int>(value);
      break;
    case SweepAxis::kContainerImageBytes:
      if (!(value >= 0.0) || !std::isfinite(value))
        throw ValidationError(field, "container_image_bytes values must be >= 0");
      sp->cold_start.container_image_bytes = value;
      break;
    case SweepAxis::kExtraDownloadBytes:
      if (!(value >= 0.0) || !std::isfinite(value))
        throw ValidationError(field, "extra_download_bytes values must be >= 0");
      sp->config.extra_download_bytes = value;
      break;
    case SweepAxis::kNInferences:
      if (!is_integral(value) || value < 1)
        throw ValidationError(field, "n_inferences values must be integers >= 1");
      sp->config.n_inferences = static_cast<int>(value);
      break;
    case SweepAxis::kBatchSize:
      break;
  }
  return out;
}

void SweepSpec::validate() const {
  base.validate();
  if (values.empty()) throw ValidationError("values", "must be non-empty");
  for (double v : values) apply_axis(base, axis, v);
}

}  // namespace servesim

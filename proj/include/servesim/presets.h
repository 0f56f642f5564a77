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

#include <optional>
#include <string>
#include <vector>

#include "servesim/scenario.h"

namespace servesim {

struct PresetInfo {
  std::string id;
  std::string description;
};

// Ids look like aws-tf-mobilenet-w40, gcp-managed-vgg-w120, aws-gpu-albert-w200.
std::vector<PresetInfo> list_presets();
std::optional<ScenarioSpec> find_preset(const std::string& id);
// Throws ValidationError("preset", ...) for unknown ids.
ScenarioSpec preset(const std::string& id);

// Workload presets w40/w120/w200 with their MMPP parameters.
WorkloadSpec workload_preset(int lambda_high);

}  // namespace servesim

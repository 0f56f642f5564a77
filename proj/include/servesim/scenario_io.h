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

#include <filesystem>
#include <string>

#include "json.hpp"
#include "servesim/scenario.h"

namespace servesim {

using Json = nlohmann::ordered_json;

// Fully spelled-out form; unbounded quantities are written as null.
Json scenario_to_json(const ScenarioSpec& spec);

// Accepts a complete scenario, or {"preset": id, ...overrides} where the
// overrides are merged (RFC 7386) onto the preset before parsing. Unknown
// keys and type mismatches raise ValidationError naming the field. The
// result is validated.
ScenarioSpec scenario_from_json(const Json& doc);

// Reads a scenario file, a manifest written by the harness, or a bare
// preset id (when `source` is not an existing file).
ScenarioSpec load_scenario(const std::string& source);

Json sweep_to_json(const SweepSpec& sweep);
SweepSpec sweep_from_json(const Json& doc);
SweepSpec load_sweep(const std::filesystem::path& path);

}  // namespace servesim

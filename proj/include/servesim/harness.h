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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "servesim/analysis.h"
#include "servesim/scenario.h"

namespace servesim {

struct RunOutput {
  ScenarioSpec spec;  // as run, with the seed applied
  SimulationResult result;
  MetricsReport report;
};

// Runs `spec` with workload.seed replaced by `seed`. No I/O.
RunOutput run_in_memory(ScenarioSpec spec, std::uint64_t seed);

// Runs and writes metrics.json, latency_series.csv, instance_series.csv,
// records.csv, instances.csv, manifest.json (and trace.csv if enabled).
RunOutput run(const ScenarioSpec& spec, std::uint64_t seed,
              const std::filesystem::path& out_dir);

Json manifest_json(const ScenarioSpec& spec_with_seed);

struct SweepCell {
  double axis_value = 0.0;
  std::uint64_t seed = 0;
  std::optional<MetricsReport> report;
  std::string error;  // set when the cell failed
};

struct SweepOutcome {
  std::vector<SweepCell> cells;  // value-major, then seed, in input order
  Comparison comparison;         // seed-averaged, baseline = first value
};

// Cells run on up to `threads` workers (0 = hardware concurrency); results
// are collected in input order so output is independent of scheduling.
SweepOutcome sweep(const SweepSpec& spec, std::span<const std::uint64_t> seeds,
                   unsigned threads = 0);

// Writes sweep.csv (axis_value,seed,avg_latency_s,success_ratio,cost,cold_starts),
// failures.csv, compare.json and compare.csv.
void write_sweep(const SweepSpec& spec, const SweepOutcome& outcome,
                 const std::filesystem::path& out_dir);

}  // namespace servesim

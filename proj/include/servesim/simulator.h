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
#include <iosfwd>
#include <string>
#include <vector>

#include "servesim/event_queue.h"
#include "servesim/records.h"
#include "servesim/scenario.h"

namespace servesim {

struct TraceLine {
  double time = 0.0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::kRequestArrival;
  std::string detail;
};

struct SimulationResult {
  std::vector<RequestRecord> records;     // one per sample, by request_id
  std::vector<InstanceState> instances;
  std::vector<BurstInterval> bursts;
  std::uint64_t event_count = 0;
  std::int64_t invocations = 0;
  std::int64_t cold_starts = 0;           // instance creations on serverless
  double end_time = 0.0;                  // max(workload duration, last event)
  std::vector<TraceLine> trace;           // only with output.trace_events
};

// Runs one scenario to completion. Single-threaded and deterministic: the
// same spec (including workload.seed) yields identical results.
SimulationResult run_scenario(const ScenarioSpec& spec);

// CSV: time_s,sequence,kind,detail
void write_trace_csv(std::ostream& out, const std::vector<TraceLine>& trace);

}  // namespace servesim

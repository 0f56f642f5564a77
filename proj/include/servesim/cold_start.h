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

#include "servesim/profiles.h"
#include "servesim/records.h"
#include "servesim/rng.h"

namespace servesim {

struct ColdStartResult {
  double total = 0.0;
  StageBreakdown stages;
  bool image_pulled = false;
};

// compute_factor scales the CPU-bound stages (import, load, predict);
// pass memory_factor(config) to model memory-proportional CPU shares.
ColdStartResult cold_start_duration(const ModelProfile& model,
                                    const RuntimeProfile& runtime,
                                    const ColdStartProfile& cold,
                                    double extra_download_bytes,
                                    CounterRng& rng,
                                    double compute_factor = 1.0,
                                    int n_inferences = 1, int batch_count = 1);

// reference / min(memory, saturation).
double memory_factor(const ServerlessConfig& config);

// Instance-side inference time of a warm invocation.
double warm_predict_time(const ModelProfile& model, const RuntimeProfile& runtime,
                         const ServerlessConfig& config, int n_inferences,
                         int batch_count);

// Client-observed warm latency: network overhead + warm_predict_time.
double warm_service_time(const ModelProfile& model, const RuntimeProfile& runtime,
                         const ServerlessConfig& config, int n_inferences,
                         int batch_count);

}  // namespace servesim

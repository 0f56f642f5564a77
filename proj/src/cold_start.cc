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

#include "servesim/cold_start.h"

#include <algorithm>

#include "servesim/errors.h"

namespace servesim {

ColdStartResult cold_start_duration(const ModelProfile& model,
                                    const RuntimeProfile& runtime,
                                    const ColdStartProfile& cold,
                                    double extra_download_bytes, CounterRng& rng,
                                    double compute_factor, int n_inferences,
                                    int batch_count) {
  if (n_inferences < 1 || batch_count < 1)
    throw ParameterError("n_inferences and batch_count must be >= 1");
  ColdStartResult r;
  // Always consume one draw so the stream position does not depend on
  // the pull probability.
  const double u = rng.uniform();
  r.image_pulled = u < cold.image_pull_probability;

  r.stages.container = cold.container_overhead;
  if (r.image_pulled) {
    r.stages.container += cold.image_pull_time * cold.container_image_bytes / 1e9;
  }
  r.stages.import = runtime.import_time * compute_factor;
  const double bytes =
      (model.packed_in_image ? 0.0 : model.artifact_bytes) + extra_download_bytes;
  if (bytes > 0.0) {
    r.stages.download = bytes / cold.download_bandwidth + cold.download_latency;
  }
  r.stages.load = runtime.load_time * compute_factor;
  const double samples = static_cast<double>(n_inferences) * batch_count;
  r.stages.predict = (samples * model.predict_warm * runtime.predict_scale +
                      model.predict_cold_extra) *
                     compute_factor;
  r.total = r.stages.total();
  return r;
}

double memory_factor(const ServerlessConfig& config) {
  return config.memory_reference_gb /
         std::min(config.memory_gb, config.memory_saturation_gb);
}

double warm_predict_time(const ModelProfile& model, const RuntimeProfile& runtime,
                         const ServerlessConfig& config, int n_inferences,
                         int batch_count) {
  if (n_inferences < 1 || batch_count < 1)
    throw ParameterError("n_inferences and batch_count must be >= 1");
  return static_cast<double>(n_inferences) * batch_count * model.predict_warm *
         runtime.predict_scale * memory_factor(config);
}

double warm_service_time(const ModelProfile& model, const RuntimeProfile& runtime,
                         const ServerlessConfig& config, int n_inferences,
                         int batch_count) {
  return config.network_overhead +
         warm_predict_time(model, runtime, config, n_inferences, batch_count);
}

}  // namespace servesim

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

#include "servesim/presets.h"

#include <array>
#include <cstdio>

#include "servesim/errors.h"

namespace servesim {
namespace {

// Calibrated stage means per (cloud, runtime, model). Import and load
// absorb everything the runtime does before the first prediction.
struct StageRow {
  double import_time;
  double load_time;
  double predict_scale;
  double predict_cold_extra;
};

struct ModelRow {
  const char* id;
  double artifact_bytes;
  bool packed_in_image;
  double predict_warm;        // s per sample, TF on AWS at 2 GB
  double saturation_gb;
  double payload_bytes;
  // dedicated service times, s per sample
  double cpu_service;
  double gpu_service;
  double managed_service;
};

constexpr std::array<ModelRow, 3> kModels{{
    {"mobilenet", 16e6, false, 0.040, 2.667, 150e3, 0.26, 0.020, 0.8},
    {"albert", 51.5e6, false, 0.40, 4.0, 2e3, 0.50, 0.030, 1.6},
    {"vgg", 548e6, true, 0.65, 8.0, 150e3, 4.0, 0.020, 12.0},
}};

// [cloud][runtime][model]; cloud 0 = aws, 1 = gcp; runtime 0 = tf, 1 = ort.
constexpr StageRow kStages[2][2][3] = {
    {
        {{4.5, 1.5, 1.0, 1.6845}, {4.5, 1.9, 1.0, 1.0516}, {4.5, 2.6, 1.0, 1.2}},
        {{0.6, 0.25, 0.3, 0.6795}, {0.6, 0.5, 0.5, 0.3}, {0.6, 1.6, 0.8, 0.5}},
    },
    {
        {{4.9, 2.3, 1.525, 1.947}, {4.9, 3.24, 1.525, 1.7475}, {4.9, 3.5, 1.525, 1.5}},
        {{0.25, 0.1, 1.075, 0.1}, {0.25, 0.4, 1.0, 0.2}, {0.25, 2.0, 0.8, 0.5}},
    },
};

struct CloudRow {
  const char* id;
  double container_overhead;
  double download_bandwidth;
  double download_latency;
  double network_overhead;
  double image_bytes[2];  // tf, ort (without a packed model)
  ServerlessPricing serverless_pricing;
  double cpu_per_hour;
  double gpu_per_hour;
  double managed_per_hour;
  double managed_scale_up_delay;
};

const std::array<CloudRow, 2> kClouds{{
    {"aws", 1.0, 125.5e6, 0.05, 0.031, {1.238e9, 0.391e9},
     ServerlessPricing{0.20, 1.66667e-5, 0.001}, 0.3712, 0.752, 0.56, 240.0},
    {"gcp", 1.213, 29.82e6, 0.62, 0.031, {0.920e9, 0.400e9},
     ServerlessPricing{0.40, 1.45e-5, 0.1}, 0.38, 0.73, 0.44, 180.0},
}};

constexpr double kImagePullProbability = 0.012;
constexpr double kImagePullSecondsPerGb = 12.0;
constexpr std::array<int, 3> kWorkloads{40, 120, 200};

ModelProfile model_profile(const ModelRow& m, const StageRow& st) {
  ModelProfile p;
  p.name = m.id;
  p.artifact_bytes = m.artifact_bytes;
  p.packed_in_image = m.packed_in_image;
  p.predict_warm = m.predict_warm;
  p.predict_cold_extra = st.predict_cold_extra;
  return p;
}

ScenarioSpec base_spec(const std::string& id, int lambda_high, const ModelRow& m) {
  ScenarioSpec s;
  s.name = id;
  s.workload_label = "w" + std::to_string(lambda_high);
  s.workload = workload_preset(lambda_high);
  s.workload.payload_bytes = m.payload_bytes;
  s.model = model_profile(m, kStages[0][0][&m - kModels.data()]);
  s.runtime = RuntimeProfile{"tf", 0.0, 0.0, 1.0};
  return s;
}

ScenarioSpec serverless_spec(const CloudRow& c, int cloud, int rt, const ModelRow& m,
                             int w) {
  const int mi = static_cast<int>(&m - kModels.data());
  const StageRow& st = kStages[cloud][rt][mi];
  const std::string id = std::string(c.id) + (rt == 0 ? "-tf-" : "-ort-") + m.id +
                         "-w" + std::to_string(w);
  ScenarioSpec s = base_spec(id, w, m);
  s.model = model_profile(m, st);
  s.runtime = RuntimeProfile{rt == 0 ? "tf" : "ort", st.import_time, st.load_time,
                             st.predict_scale};
  ServerlessPlatform p;
  p.config.memory_gb = 2.0;
  p.config.memory_reference_gb = 2.0;
  p.config.memory_saturation_gb = m.saturation_gb;
  p.config.network_overhead = c.network_overhead;
  p.cold_start.container_overhead = c.container_overhead;
  p.cold_start.download_bandwidth = c.download_bandwidth;
  p.cold_start.download_latency = c.download_latency;
  p.cold_start.image_pull_probability = kImagePullProbability;
  p.cold_start.image_pull_time = kImagePullSecondsPerGb;
  p.cold_start.container_image_bytes =
      c.image_bytes[rt] + (m.packed_in_image ? m.artifact_bytes : 0.0);
  s.platform = p;
  s.pricing = c.serverless_pricing;
  return s;
}

ScenarioSpec dedicated_spec(const CloudRow& c, bool gpu, const ModelRow& m, int w) {
  const std::string id = std::string(c.id) + (gpu ? "-gpu-" : "-cpu-") + m.id + "-w" +
                         std::to_string(w);
  ScenarioSpec s = base_spec(id, w, m);
  DedicatedServerConfig d;
  d.workers = gpu ? 1 : 8;
  d.service_time = gpu ? m.gpu_service : m.cpu_service;
  d.request_timeout = 60.0;
  s.platform = DedicatedPlatform{d};
  s.pricing = HourlyPricing{gpu ? c.gpu_per_hour : c.cpu_per_hour};
  return s;
}

ScenarioSpec managed_spec(const CloudRow& c, const ModelRow& m, int w) {
  const std::string id = std::string(c.id) + "-managed-" + m.id + "-w" + std::to_string(w);
  ScenarioSpec s = base_spec(id, w, m);
  ManagedConfig mc;
  mc.base.workers = 6;
  mc.base.service_time = m.managed_service;
  mc.base.request_timeout = 60.0;
  mc.min_instances = 1;
  mc.max_instances = 64;
  mc.target_backlog_per_instance = 40.0;
  mc.scale_up_delay = c.managed_scale_up_delay;
  mc.error_backlog_threshold = 200.0;
  mc.autoscale_interval = 60.0;
  s.platform = ManagedPlatform{mc};
  s.pricing = HourlyPricing{c.managed_per_hour};
  return s;
}

// Single-worker M/M/1 reference: lambda 8/s, mu 10/s, ~100k requests.
ScenarioSpec mm1_oracle() {
  ScenarioSpec s;
  s.name = "mm1-oracle";
  s.workload_label = "poisson-8";
  s.workload.mmpp = MmppParams{8.0, 8.0, 100.0, 100.0};
  s.workload.duration = 12500.0;
  s.workload.num_clients = 1;
  s.model.name = "oracle";
  DedicatedServerConfig d;
  d.workers = 1;
  d.service_time = 0.1;
  d.distribution = ServiceDistribution::kExponential;
  d.request_timeout = kUnbounded;
  s.platform = DedicatedPlatform{d};
  s.pricing = HourlyPricing{0.0};
  return s;
}

struct Entry {
  PresetInfo info;
  ScenarioSpec spec;
};

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> out;
    char desc[160];
    for (int ci = 0; ci < 2; ++ci) {
      const CloudRow& c = kClouds[ci];
      for (const ModelRow& m : kModels) {
        for (int w : kWorkloads) {
          for (int rt = 0; rt < 2; ++rt) {
            ScenarioSpec s = serverless_spec(c, ci, rt, m, w);
            std::snprintf(desc, sizeof(desc), "%s serverless, %s runtime, %s, workload-%d",
                          c.id, rt == 0 ? "TF" : "ORT", m.id, w);
            out.push_back({{s.name, desc}, s});
          }
          ScenarioSpec s = managed_spec(c, m, w);
          std::snprintf(desc, sizeof(desc), "%s managed ML endpoint, %s, workload-%d",
                        c.id, m.id, w);
          out.push_back({{s.name, desc}, s});
          for (bool gpu : {false, true}) {
            s = dedicated_spec(c, gpu, m, w);
            std::snprintf(desc, sizeof(desc), "%s dedicated %s server, %s, workload-%d",
                          c.id, gpu ? "GPU" : "CPU", m.id, w);
            out.push_back({{s.name, desc}, s});
          }
        }
      }
    }
    ScenarioSpec s = mm1_oracle();
    out.push_back({{s.name, "single-worker M/M/1 reference (lambda 8/s, mu 10/s)"}, s});
    return out;
  }();
  return entries;
}

}  // namespace

WorkloadSpec workload_preset(int lambda_high) {
  WorkloadSpec w;
  std::int64_t target = 0;
  switch (lambda_high) {
    case 40: target = 15000; break;
    case 120: target = 51600; break;
    case 200: target = 86000; break;
    default: throw ValidationError("workload", "no preset for lambda_high " +
                                                   std::to_string(lambda_high));
  }
  w.duration = 900.0;
  w.mmpp.lambda_high = lambda_high;
  w.mmpp.lambda_low = lambda_high / 5.0;
  w.mmpp.mean_dwell_high = 60.0;
  w.mmpp.mean_dwell_low =
      dwell_low_for_rate(w.mmpp.lambda_low, w.mmpp.lambda_high, w.mmpp.mean_dwell_high,
                         static_cast<double>(target) / w.duration);
  w.target_requests = target;
  w.count_tolerance = 0.05;
  return w;
}

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const auto& e : catalog()) out.push_back(e.info);
  return out;
}

std::optional<ScenarioSpec> find_preset(const std::string& id) {
  for (const auto& e : catalog()) {
    if (e.info.id == id) return e.spec;
  }
  return std::nullopt;
}

ScenarioSpec preset(const std::string& id) {
  auto s = find_preset(id);
  if (!s) throw ValidationError("preset", "unknown preset '" + id + "'");
  return *s;
}

}  // namespace servesim

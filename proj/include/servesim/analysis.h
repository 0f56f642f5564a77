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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "servesim/records.h"
#include "servesim/scenario_io.h"
#include "servesim/simulator.h"

namespace servesim {

// Mean latency of successful records. Throws NoDataError if none succeeded.
double average_latency(std::span<const RequestRecord> records);
// Throws NoDataError on empty input.
double success_ratio(std::span<const RequestRecord> records);
// Nearest-rank percentile (q in (0, 100]) of successful latencies.
std::optional<double> latency_percentile(std::span<const RequestRecord> records, double q);

struct LatencyBucket {
  double start = 0.0;
  std::int64_t requests = 0;
  std::int64_t successes = 0;
  std::optional<double> mean_latency;   // unset when no success in bucket
  std::optional<double> success_ratio;  // unset when bucket is empty
  bool operator==(const LatencyBucket&) const = default;
};

struct InstanceBucket {
  double start = 0.0;
  std::int64_t live = 0;
  bool operator==(const InstanceBucket&) const = default;
};

// Buckets [k*bucket, (k+1)*bucket) tile [0, run_end); records are placed
// by arrival time (an arrival at run_end falls in the last bucket).
std::vector<LatencyBucket> latency_timeseries(std::span<const RequestRecord> records,
                                              double bucket, double run_end);
// Live instances (created <= t < retired) at each bucket boundary t.
std::vector<InstanceBucket> instance_timeseries(std::span<const InstanceState> instances,
                                                double bucket, double run_end);

struct StageMeans {
  std::int64_t count = 0;
  double container = 0.0;
  double import = 0.0;
  double download = 0.0;
  double load = 0.0;
  double predict = 0.0;
  double e2e = 0.0;
  bool operator==(const StageMeans&) const = default;
};

struct ColdStartStats {
  StageMeans cold;            // all stages; empty when count == 0
  std::int64_t warm_count = 0;
  double warm_e2e = 0.0;
  double warm_predict = 0.0;
  bool operator==(const ColdStartStats&) const = default;
};

// Successful records only; samples of one batched invocation share a
// single cold start, counted once per invocation.
ColdStartStats coldstart_breakdown(std::span<const RequestRecord> records);

double scenario_cost(const ScenarioSpec& spec, const SimulationResult& result);

struct MetricsReport {
  std::string name;
  std::string workload_label;
  std::string platform;
  std::uint64_t seed = 0;
  std::int64_t requests = 0;
  std::int64_t successes = 0;
  std::int64_t timeouts = 0;
  std::int64_t queue_overflows = 0;
  std::int64_t backlog_rejections = 0;
  std::int64_t invocations = 0;
  std::int64_t cold_starts = 0;
  std::int64_t instances_created = 0;
  std::int64_t peak_live_instances = 0;
  std::optional<double> avg_latency_success;
  std::optional<double> success_ratio;
  std::optional<double> p50;
  std::optional<double> p95;
  std::optional<double> p99;
  double total_cost = 0.0;
  double run_end = 0.0;
  double latency_bucket = 10.0;
  double instance_bucket = 60.0;
  std::vector<LatencyBucket> latency_series;
  std::vector<InstanceBucket> instance_series;
  ColdStartStats cold_start_stats;
  bool operator==(const MetricsReport&) const = default;
};

MetricsReport build_report(const ScenarioSpec& spec, const SimulationResult& result);

Json report_to_json(const MetricsReport& report);
MetricsReport report_from_json(const Json& doc);

struct ComparisonRow {
  std::string name;
  std::string workload_label;
  std::optional<double> avg_latency;
  std::optional<double> success_ratio;
  double cost = 0.0;
  // row / baseline; unset when either side is missing or the baseline is 0.
  std::optional<double> latency_ratio;
  std::optional<double> success_ratio_ratio;
  std::optional<double> cost_ratio;
  std::string warning;
};

struct Comparison {
  std::string baseline;
  std::vector<ComparisonRow> rows;
};

// Requires >= 2 reports (ParameterError otherwise).
Comparison compare_report(std::span<const MetricsReport> reports, std::size_t baseline = 0);
Json comparison_to_json(const Comparison& c);
void write_comparison_csv(std::ostream& out, const Comparison& c);

// bucket_start_s,mean_latency_s,success_ratio (empty cells mark no data)
void write_latency_series_csv(std::ostream& out, std::span<const LatencyBucket> series);
// bucket_start_s,live_instances
void write_instance_series_csv(std::ostream& out, std::span<const InstanceBucket> series);
// instance_id,created_at_s,warm_at_s,retired_at_s,cold_starts_served
void write_instance_log_csv(std::ostream& out, std::span<const InstanceState> instances);
void write_records_csv(std::ostream& out, std::span<const RequestRecord> records);

}  // namespace servesim

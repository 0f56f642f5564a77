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

#include "servesim/analysis.h"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "servesim/billing.h"
#include "servesim/errors.h"

namespace servesim {
namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> read_opt(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

std::size_t bucket_count(double bucket, double run_end) {
  if (!(bucket > 0.0)) throw ParameterError("bucket must be > 0");
  if (run_end <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(run_end / bucket));
}

std::optional<double> ratio(const std::optional<double>& a, const std::optional<double>& b) {
  if (!a || !b || *b == 0.0) return std::nullopt;
  return *a / *b;
}

}  // namespace

double average_latency(std::span<const RequestRecord> records) {
  // Summed in sorted order so the result does not depend on record order.
  std::vector<double> lat;
  for (const auto& r : records)
    if (r.success()) lat.push_back(r.latency());
  if (lat.empty()) throw NoDataError("no successful requests");
  std::sort(lat.begin(), lat.end());
  double sum = 0.0;
  for (double x : lat) sum += x;
  return sum / static_cast<double>(lat.size());
}

double success_ratio(std::span<const RequestRecord> records) {
  if (records.empty()) throw NoDataError("no requests");
  const auto ok = std::count_if(records.begin(), records.end(),
                                [](const RequestRecord& r) { return r.success(); });
  return static_cast<double>(ok) / static_cast<double>(records.size());
}

std::optional<double> latency_percentile(std::span<const RequestRecord> records, double q) {
  if (!(q > 0.0 && q <= 100.0)) throw ParameterError("percentile must be in (0, 100]");
  std::vector<double> xs;
  for (const auto& r : records) {
    if (r.success()) xs.push_back(r.latency());
  }
  if (xs.empty()) return std::nullopt;
  const auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * xs.size()));
  const std::size_t k = std::max<std::size_t>(rank, 1) - 1;
  std::nth_element(xs.begin(), xs.begin() + k, xs.end());
  return xs[k];
}

std::vector<LatencyBucket> latency_timeseries(std::span<const RequestRecord> records,
                                              double bucket, double run_end) {
  const std::size_t n = bucket_count(bucket, run_end);
  std::vector<LatencyBucket> out(n);
  std::vector<double> sums(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out[i].start = static_cast<double>(i) * bucket;
  for (const auto& r : records) {
    if (n == 0) break;
    auto k = static_cast<std::size_t>(std::max(0.0, std::floor(r.arrival_time / bucket)));
    k = std::min(k, n - 1);
    ++out[k].requests;
    if (r.success()) {
      ++out[k].successes;
      sums[k] += r.latency();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (out[i].successes > 0) out[i].mean_latency = sums[i] / static_cast<double>(out[i].successes);
    if (out[i].requests > 0) {
      out[i].success_ratio =
          static_cast<double>(out[i].successes) / static_cast<double>(out[i].requests);
    }
  }
  return out;
}

std::vector<InstanceBucket> instance_timeseries(std::span<const InstanceState> instances,
                                                double bucket, double run_end) {
  const std::size_t n = bucket_count(bucket, run_end);
  std::vector<InstanceBucket> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].start = static_cast<double>(i) * bucket;
    for (const auto& s : instances) {
      if (s.live_at(out[i].start)) ++out[i].live;
    }
  }
  return out;
}

ColdStartStats coldstart_breakdown(std::span<const RequestRecord> records) {
  ColdStartStats st;
  StageMeans& c = st.cold;
  for (const auto& r : records) {
    if (!r.success() || r.request_id != r.invocation_id) continue;
    if (r.cold && r.stage_breakdown) {
      const StageBreakdown& b = *r.stage_breakdown;
      ++c.count;
      c.container += b.container;
      c.import += b.import;
      c.download += b.download;
      c.load += b.load;
      c.predict += b.predict;
      c.e2e += b.total();
    } else {
      ++st.warm_count;
      st.warm_e2e += r.latency();
      st.warm_predict += r.predict_time;
    }
  }
  if (c.count > 0) {
    const auto n = static_cast<double>(c.count);
    c.container /= n;
    c.import /= n;
    c.download /= n;
    c.load /= n;
    c.predict /= n;
    c.e2e /= n;
  }
  if (st.warm_count > 0) {
    st.warm_e2e /= static_cast<double>(st.warm_count);
    st.warm_predict /= static_cast<double>(st.warm_count);
  }
  return st;
}

double scenario_cost(const ScenarioSpec& spec, const SimulationResult& result) {
  if (const auto* s = std::get_if<ServerlessPlatform>(&spec.platform)) {
    return serverless_cost(result.records, s->config.memory_gb,
                           std::get<ServerlessPricing>(spec.pricing));
  }
  const auto& hourly = std::get<HourlyPricing>(spec.pricing);
  if (result.records.empty()) return 0.0;
  if (std::holds_alternative<ManagedPlatform>(spec.platform)) {
    return managed_service_cost(result.instances, result.end_time, hourly);
  }
  return dedicated_server_cost(result.end_time, hourly);
}

MetricsReport build_report(const ScenarioSpec& spec, const SimulationResult& result) {
  MetricsReport m;
  m.name = spec.name;
  m.workload_label = spec.workload_label;
  m.platform = platform_kind(spec.platform);
  m.seed = spec.workload.seed;
  m.requests = static_cast<std::int64_t>(result.records.size());
  for (const auto& r : result.records) {
    switch (r.status) {
      case RequestStatus::kSuccess: ++m.successes; break;
      case RequestStatus::kTimeout: ++m.timeouts; break;
      case RequestStatus::kQueueOverflow: ++m.queue_overflows; break;
      case RequestStatus::kBacklogRejected: ++m.backlog_rejections; break;
    }
  }
  m.invocations = result.invocations;
  m.cold_starts = result.cold_starts;
  m.instances_created = static_cast<std::int64_t>(result.instances.size());
  if (m.successes > 0) m.avg_latency_success = average_latency(result.records);
  if (m.requests > 0) m.success_ratio = success_ratio(result.records);
  m.p50 = latency_percentile(result.records, 50);
  m.p95 = latency_percentile(result.records, 95);
  m.p99 = latency_percentile(result.records, 99);
  m.total_cost = scenario_cost(spec, result);
  m.run_end = result.end_time;
  m.latency_bucket = spec.output.latency_bucket;
  m.instance_bucket = spec.output.instance_bucket;
  m.latency_series = latency_timeseries(result.records, m.latency_bucket, result.end_time);
  m.instance_series = instance_timeseries(result.instances, m.instance_bucket, result.end_time);
  // Peak over every creation instant, not just bucket boundaries.
  std::vector<std::pair<double, int>> edges;
  for (const auto& s : result.instances) {
    edges.emplace_back(s.created_at, +1);
    if (s.retired_at) edges.emplace_back(*s.retired_at, -1);
  }
  std::sort(edges.begin(), edges.end());  // retirements before creations at ties
  std::int64_t live = 0;
  for (const auto& [t, d] : edges) {
    live += d;
    m.peak_live_instances = std::max(m.peak_live_instances, live);
  }
  m.cold_start_stats = coldstart_breakdown(result.records);
  return m;
}

Json report_to_json(const MetricsReport& m) {
  Json lat = Json::array();
  for (const auto& b : m.latency_series) {
    lat.push_back({{"bucket_start_s", b.start},
                   {"requests", b.requests},
                   {"successes", b.successes},
                   {"mean_latency_s", opt(b.mean_latency)},
                   {"success_ratio", opt(b.success_ratio)}});
  }
  Json inst = Json::array();
  for (const auto& b : m.instance_series) {
    inst.push_back({{"bucket_start_s", b.start}, {"live_instances", b.live}});
  }
  const StageMeans& c = m.cold_start_stats.cold;
  return Json{
      {"name", m.name},
      {"workload_label", m.workload_label},
      {"platform", m.platform},
      {"seed", m.seed},
      {"requests", m.requests},
      {"successes", m.successes},
      {"failures",
       {{"timeout", m.timeouts},
        {"queue_overflow", m.queue_overflows},
        {"backlog_rejected", m.backlog_rejections}}},
      {"invocations", m.invocations},
      {"cold_starts", m.cold_starts},
      {"instances_created", m.instances_created},
      {"peak_live_instances", m.peak_live_instances},
      {"avg_latency_success_s", opt(m.avg_latency_success)},
      {"success_ratio", opt(m.success_ratio)},
      {"p50_latency_s", opt(m.p50)},
      {"p95_latency_s", opt(m.p95)},
      {"p99_latency_s", opt(m.p99)},
      {"total_cost", m.total_cost},
      {"run_end_s", m.run_end},
      {"cold_start_stats",
       {{"cold",
         {{"count", c.count},
          {"container_s", c.container},
          {"import_s", c.import},
          {"download_s", c.download},
          {"load_s", c.load},
          {"predict_s", c.predict},
          {"e2e_s", c.e2e}}},
        {"warm",
         {{"count", m.cold_start_stats.warm_count},
          {"e2e_s", m.cold_start_stats.warm_e2e},
          {"predict_s", m.cold_start_stats.warm_predict}}}}},
      {"latency_bucket_s", m.latency_bucket},
      {"instance_bucket_s", m.instance_bucket},
      {"latency_series", lat},
      {"instance_series", inst},
  };
}

MetricsReport report_from_json(const Json& j) {
  MetricsReport m;
  try {
    m.name = j.at("name").get<std::string>();
    m.workload_label = j.at("workload_label").get<std::string>();
    m.platform = j.at("platform").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.requests = j.at("requests").get<std::int64_t>();
    m.successes = j.at("successes").get<std::int64_t>();
    const Json& f = j.at("failures");
    m.timeouts = f.at("timeout").get<std::int64_t>();
    m.queue_overflows = f.at("queue_overflow").get<std::int64_t>();
    m.backlog_rejections = f.at("backlog_rejected").get<std::int64_t>();
    m.invocations = j.at("invocations").get<std::int64_t>();
    m.cold_starts = j.at("cold_starts").get<std::int64_t>();
    m.instances_created = j.at("instances_created").get<std::int64_t>();
    m.peak_live_instances = j.at("peak_live_instances").get<std::int64_t>();
    m.avg_latency_success = read_opt(j, "avg_latency_success_s");
    m.success_ratio = read_opt(j, "success_ratio");
    m.p50 = read_opt(j, "p50_latency_s");
    m.p95 = read_opt(j, "p95_latency_s");
    m.p99 = read_opt(j, "p99_latency_s");
    m.total_cost = j.at("total_cost").get<double>();
    m.run_end = j.at("run_end_s").get<double>();
    const Json& cs = j.at("cold_start_stats");
    const Json& c = cs.at("cold");
    StageMeans& sm = m.cold_start_stats.cold;
    sm.count = c.at("count").get<std::int64_t>();
    sm.container = c.at("container_s").get<double>();
    sm.import = c.at("import_s").get<double>();
    sm.download = c.at("download_s").get<double>();
    sm.load = c.at("load_s").get<double>();
    sm.predict = c.at("predict_s").get<double>();
    sm.e2e = c.at("e2e_s").get<double>();
    const Json& w = cs.at("warm");
    m.cold_start_stats.warm_count = w.at("count").get<std::int64_t>();
    m.cold_start_stats.warm_e2e = w.at("e2e_s").get<double>();
    m.cold_start_stats.warm_predict = w.at("predict_s").get<double>();
    m.latency_bucket = j.at("latency_bucket_s").get<double>();
    m.instance_bucket = j.at("instance_bucket_s").get<double>();
    for (const auto& b : j.at("latency_series")) {
      LatencyBucket lb;
      lb.start = b.at("bucket_start_s").get<double>();
      lb.requests = b.at("requests").get<std::int64_t>();
      lb.successes = b.at("successes").get<std::int64_t>();
      lb.mean_latency = read_opt(b, "mean_latency_s");
      lb.success_ratio = read_opt(b, "success_ratio");
      m.latency_series.push_back(lb);
    }
    for (const auto& b : j.at("instance_series")) {
      m.instance_series.push_back(
          {b.at("bucket_start_s").get<double>(), b.at("live_instances").get<std::int64_t>()});
    }
  } catch (const Json::exception& e) {
    throw DataError(std::string("metrics report: ") + e.what());
  }
  return m;
}

Comparison compare_report(std::span<const MetricsReport> reports, std::size_t baseline) {
  if (reports.size() < 2) throw ParameterError("compare_report needs at least two reports");
  if (baseline >= reports.size()) throw ParameterError("baseline index out of range");
  const MetricsReport& b = reports[baseline];
  Comparison out;
  out.baseline = b.name;
  for (const auto& r : reports) {
    ComparisonRow row;
    row.name = r.name;
    row.workload_label = r.workload_label;
    row.avg_latency = r.avg_latency_success;
    row.success_ratio = r.success_ratio;
    row.cost = r.total_cost;
    row.latency_ratio = ratio(r.avg_latency_success, b.avg_latency_success);
    row.success_ratio_ratio = ratio(r.success_ratio, b.success_ratio);
    row.cost_ratio = ratio(r.total_cost, b.total_cost);
    if (r.workload_label != b.workload_label) {
      row.warning = "workload '" + r.workload_label + "' differs from baseline '" +
                    b.workload_label + "'";
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

Json comparison_to_json(const Comparison& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"name", r.name},
                    {"workload_label", r.workload_label},
                    {"avg_latency_s", opt(r.avg_latency)},
                    {"success_ratio", opt(r.success_ratio)},
                    {"cost", r.cost},
                    {"latency_ratio", opt(r.latency_ratio)},
                    {"success_ratio_ratio", opt(r.success_ratio_ratio)},
                    {"cost_ratio", opt(r.cost_ratio)},
                    {"warning", r.warning}});
  }
  return Json{{"baseline", c.baseline}, {"rows", rows}};
}

void write_comparison_csv(std::ostream& out, const Comparison& c) {
  out << "name,workload_label,avg_latency_s,success_ratio,cost,latency_ratio,"
         "success_ratio_ratio,cost_ratio,warning\n";
  for (const auto& r : c.rows) {
    out << r.name << ',' << r.workload_label << ',' << fmt(r.avg_latency) << ','
        << fmt(r.success_ratio) << ',' << fmt(r.cost) << ',' << fmt(r.latency_ratio) << ','
        << fmt(r.success_ratio_ratio) << ',' << fmt(r.cost_ratio) << ',' << r.warning
        << '\n';
  }
}

void write_latency_series_csv(std::ostream& out, std::span<const LatencyBucket> series) {
  out << "bucket_start_s,mean_latency_s,success_ratio\n";
  for (const auto& b : series) {
    out << fmt(b.start) << ',' << fmt(b.mean_latency) << ',' << fmt(b.success_ratio) << '\n';
  }
}

void write_instance_series_csv(std::ostream& out, std::span<const InstanceBucket> series) {
  out << "bucket_start_s,live_instances\n";
  for (const auto& b : series) out << fmt(b.start) << ',' << b.live << '\n';
}

void write_instance_log_csv(std::ostream& out, std::span<const InstanceState> instances) {
  out << "instance_id,created_at_s,warm_at_s,retired_at_s,cold_starts_served\n";
  for (const auto& s : instances) {
    out << s.instance_id << ',' << fmt(s.created_at) << ',' << fmt(s.warm_at) << ','
        << fmt(s.retired_at) << ',' << s.cold_starts_served << '\n';
  }
}

void write_records_csv(std::ostream& out, std::span<const RequestRecord> records) {
  out << "request_id,client_id,invocation_id,arrival_time_s,response_time_s,status,cold,"
         "instance_id,batch_count,billed_duration_s,predict_s,container_s,import_s,"
         "download_s,load_s,stage_predict_s\n";
  for (const auto& r : records) {
    out << r.request_id << ',' << r.client_id << ',' << r.invocation_id << ','
        << fmt(r.arrival_time) << ',' << fmt(r.response_time) << ',' << to_string(r.status)
        << ',' << (r.cold ? 1 : 0) << ',' << r.instance_id << ',' << r.batch_count << ','
        << fmt(r.billed_duration) << ',' << fmt(r.predict_time);
    if (r.stage_breakdown) {
      const StageBreakdown& b = *r.stage_breakdown;
      out << ',' << fmt(b.container) << ',' << fmt(b.import) << ',' << fmt(b.download) << ','
          << fmt(b.load) << ',' << fmt(b.predict);
    } else {
      out << ",,,,,";
    }
    out << '\n';
  }
}

}  // namespace servesim

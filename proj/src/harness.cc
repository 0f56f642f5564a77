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

#include "servesim/harness.h"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include "servesim/errors.h"
#include "servesim/rng.h"
#include "servesim/scenario_io.h"

namespace servesim {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

}  // namespace

RunOutput run_in_memory(ScenarioSpec spec, std::uint64_t seed) {
  spec.workload.seed = seed;
  spec.validate();
  RunOutput out;
  out.result = run_scenario(spec);
  out.report = build_report(spec, out.result);
  out.spec = std::move(spec);
  return out;
}

Json manifest_json(const ScenarioSpec& spec) {
  return Json{{"manifest_version", 1},
              {"rng_algorithm", std::string(kRngAlgorithm)},
              {"seed", spec.workload.seed},
              {"scenario", scenario_to_json(spec)}};
}

RunOutput run(const ScenarioSpec& spec, std::uint64_t seed,
              const std::filesystem::path& out_dir) {
  RunOutput out = run_in_memory(spec, seed);
  std::filesystem::create_directories(out_dir);
  write_json(out_dir / "manifest.json", manifest_json(out.spec));
  write_json(out_dir / "metrics.json", report_to_json(out.report));
  {
    auto f = open_out(out_dir / "latency_series.csv");
    write_latency_series_csv(f, out.report.latency_series);
  }
  {
    auto f = open_out(out_dir / "instance_series.csv");
    write_instance_series_csv(f, out.report.instance_series);
  }
  {
    auto f = open_out(out_dir / "records.csv");
    write_records_csv(f, out.result.records);
  }
  {
    auto f = open_out(out_dir / "instances.csv");
    write_instance_log_csv(f, out.result.instances);
  }
  if (out.spec.output.trace_events) {
    auto f = open_out(out_dir / "trace.csv");
    write_trace_csv(f, out.result.trace);
  }
  return out;
}

SweepOutcome sweep(const SweepSpec& spec, std::span<const std::uint64_t> seeds,
                   unsigned threads) {
  spec.validate();
  if (seeds.empty()) throw ValidationError("seeds", "must be non-empty");
  SweepOutcome out;
  for (double v : spec.values) {
    for (auto s : seeds) out.cells.push_back({v, s, std::nullopt, {}});
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(out.cells.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < out.cells.size(); i = next++) {
      SweepCell& cell = out.cells[i];
      try {
        cell.report = run_in_memory(apply_axis(spec.base, spec.axis, cell.axis_value),
                                    cell.seed)
                          .report;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Seed-averaged report per axis value, in value order.
  std::vector<MetricsReport> averaged;
  for (double v : spec.values) {
    MetricsReport avg;
    avg.name = to_string(spec.axis) + "=" + fmt(v);
    avg.workload_label = spec.base.workload_label;
    int n = 0, n_lat = 0, n_sr = 0;
    double lat = 0.0, sr = 0.0;
    for (const auto& c : out.cells) {
      if (c.axis_value != v || !c.report) continue;
      ++n;
      avg.total_cost += c.report->total_cost;
      if (c.report->avg_latency_success) {
        lat += *c.report->avg_latency_success;
        ++n_lat;
      }
      if (c.report->success_ratio) {
        sr += *c.report->success_ratio;
        ++n_sr;
      }
    }
    if (n > 0) avg.total_cost /= n;
    if (n_lat > 0) avg.avg_latency_success = lat / n_lat;
    if (n_sr > 0) avg.success_ratio = sr / n_sr;
    averaged.push_back(std::move(avg));
  }
  if (averaged.size() >= 2) {
    out.comparison = compare_report(averaged, 0);
  } else {
    out.comparison.baseline = averaged.front().name;
    ComparisonRow row;
    row.name = averaged.front().name;
    row.workload_label = averaged.front().workload_label;
    row.avg_latency = averaged.front().avg_latency_success;
    row.success_ratio = averaged.front().success_ratio;
    row.cost = averaged.front().total_cost;
    if (row.avg_latency) row.latency_ratio = 1.0;
    if (row.success_ratio) row.success_ratio_ratio = 1.0;
    if (row.cost != 0.0) row.cost_ratio = 1.0;
    out.comparison.rows.push_back(row);
  }
  return out;
}

void write_sweep(const SweepSpec& spec, const SweepOutcome& outcome,
                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    auto f = open_out(out_dir / "sweep.csv");
    f << "axis_value,seed,avg_latency_s,success_ratio,cost,cold_starts\n";
    for (const auto& c : outcome.cells) {
      if (!c.report) continue;
      f << fmt(c.axis_value) << ',' << c.seed << ',' << fmt(c.report->avg_latency_success)
        << ',' << fmt(c.report->success_ratio) << ',' << fmt(c.report->total_cost) << ','
        << c.report->cold_starts << '\n';
    }
  }
  {
    auto f = open_out(out_dir / "failures.csv");
    f << "axis_value,seed,error\n";
    for (const auto& c : outcome.cells) {
      if (c.report) continue;
      std::string msg = c.error;
      for (auto& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      f << fmt(c.axis_value) << ',' << c.seed << ',' << msg << '\n';
    }
  }
  Json doc = comparison_to_json(outcome.comparison);
  doc["axis"] = to_string(spec.axis);
  write_json(out_dir / "compare.json", doc);
  auto f = open_out(out_dir / "compare.csv");
  write_comparison_csv(f, outcome.comparison);
}

}  // namespace servesim

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

// servesim command-line front end.
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "servesim/analysis.h"
#include "servesim/errors.h"
#include "servesim/harness.h"
#include "servesim/presets.h"
#include "servesim/scenario_io.h"
#include "servesim/workload.h"

namespace {

using namespace servesim;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string show(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", *v);
  return buf;
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || tok[0] == '-') throw ValidationError("seeds", "bad seed '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("seeds", "must list at least one seed");
  return out;
}

void print_report(const MetricsReport& m) {
  std::printf("%s (%s, %s)\n", m.name.c_str(), m.platform.c_str(), m.workload_label.c_str());
  std::printf("  requests %" PRId64 "  success_ratio %s  avg_latency_s %s  cost %.4f\n",
              m.requests, show(m.success_ratio).c_str(),
              show(m.avg_latency_success).c_str(), m.total_cost);
  std::printf("  cold_starts %" PRId64 "  peak_live_instances %" PRId64 "\n", m.cold_starts,
              m.peak_live_instances);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"servesim: model-serving platform simulator"};
  app.require_subcommand(1);

  std::string scenario_src;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir = "out";
  auto* run_cmd = app.add_subcommand("run", "Run one scenario file or preset id");
  run_cmd->add_option("scenario", scenario_src, "scenario file, manifest, or preset id")
      ->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "workload seed (default: from scenario)");
  run_cmd->add_option("--out", out_dir, "output directory");

  std::string sweep_file;
  std::string seeds_arg = "1";
  unsigned threads = 0;
  std::string sweep_out = "sweep-out";
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a sweep file across seeds");
  sweep_cmd->add_option("sweepfile", sweep_file)->required();
  sweep_cmd->add_option("--seeds", seeds_arg, "comma-separated seeds");
  sweep_cmd->add_option("--out", sweep_out, "output directory");
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* presets_cmd = app.add_subcommand("presets", "Preset catalog");
  presets_cmd->require_subcommand(1);
  presets_cmd->add_subcommand("list", "List preset ids");

  std::string wl_src;
  std::string wl_out;
  std::uint64_t wl_seed = 0;
  auto* workload_cmd = app.add_subcommand("workload", "Workload tools");
  workload_cmd->require_subcommand(1);
  auto* gen_cmd = workload_cmd->add_subcommand("gen", "Export a workload as CSV");
  gen_cmd->add_option("spec", wl_src, "scenario file or preset id")->required();
  gen_cmd->add_option("--out", wl_out, "CSV path")->required();
  auto* wl_seed_opt = gen_cmd->add_option("--seed", wl_seed, "workload seed");

  std::vector<std::string> reports;
  std::size_t baseline = 0;
  std::string compare_out;
  auto* compare_cmd = app.add_subcommand("compare", "Compare metrics reports");
  compare_cmd->add_option("reports", reports, "metrics.json files")->required();
  compare_cmd->add_option("--baseline", baseline, "index of the baseline report");
  compare_cmd->add_option("--out", compare_out, "write comparison JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }
  seed_given = seed_opt->count() > 0;

  try {
    if (*run_cmd) {
      const ScenarioSpec spec = load_scenario(scenario_src);
      const auto out = run(spec, seed_given ? seed : spec.workload.seed, out_dir);
      print_report(out.report);
    } else if (*sweep_cmd) {
      const SweepSpec spec = load_sweep(sweep_file);
      const auto seeds = parse_seeds(seeds_arg);
      const auto outcome = sweep(spec, seeds, threads);
      write_sweep(spec, outcome, sweep_out);
      write_comparison_csv(std::cout, outcome.comparison);
      for (const auto& c : outcome.cells) {
        if (!c.report) std::cerr << "cell failed: " << c.error << '\n';
      }
    } else if (*presets_cmd) {
      for (const auto& p : list_presets()) std::printf("%-28s %s\n", p.id.c_str(), p.description.c_str());
    } else if (*workload_cmd) {
      ScenarioSpec spec = load_scenario(wl_src);
      if (wl_seed_opt->count() > 0) spec.workload.seed = wl_seed;
      const InvocationStream s = build_invocations(spec.workload);
      std::ofstream f(wl_out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + wl_out);
      write_workload_csv(f, s.invocations);
      std::printf("%zu requests, %zu invocations -> %s\n", s.requests.size(),
                  s.invocations.size(), wl_out.c_str());
    } else if (*compare_cmd) {
      std::vector<MetricsReport> loaded;
      for (const auto& path : reports) {
        std::ifstream in(path);
        if (!in) throw ValidationError(path, "cannot open file");
        Json doc;
        try {
          doc = Json::parse(in);
        } catch (const Json::parse_error& e) {
          throw ValidationError(path, e.what());
        }
        loaded.push_back(report_from_json(doc));
      }
      if (loaded.size() < 2) throw ValidationError("reports", "need at least two reports");
      if (baseline >= loaded.size()) throw ValidationError("baseline", "index out of range");
      const Comparison c = compare_report(loaded, baseline);
      write_comparison_csv(std::cout, c);
      if (!compare_out.empty()) {
        std::ofstream f(compare_out, std::ios::binary);
        f << comparison_to_json(c).dump(2) << '\n';
      }
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

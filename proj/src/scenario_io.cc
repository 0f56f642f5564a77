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

#include "servesim/scenario_io.h"

#include <cmath>
#include <fstream>
#include <set>

#include "servesim/errors.h"
#include "servesim/presets.h"
#include "servesim/rng.h"

namespace servesim {
namespace {

Json num_or_null(double v) { return std::isinf(v) ? Json(nullptr) : Json(v); }

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown fields.
class Reader {
 public:
  Reader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ValidationError(where(""), "expected an object");
  }

  bool has(const char* key) const { return obj_.contains(key); }

  void number(const char* key, double& out, bool null_is_unbounded = false) {
    const Json* v = take(key);
    if (!v) return;
    if (v->is_null() && null_is_unbounded) {
      out = kUnbounded;
      return;
    }
    if (!v->is_number()) throw ValidationError(where(key), "expected a number");
    out = v->get<double>();
  }

  void optional_number(const char* key, std::optional<double>& out) {
    const Json* v = take(key);
    if (!v) return;
    if (v->is_null()) {
      out.reset();
      return;
    }
    if (!v->is_number()) throw ValidationError(where(key), "expected a number or null");
    out = v->get<double>();
  }

  template <class Int>
  void integer(const char* key, Int& out) {
    const Json* v = take(key);
    if (!v) return;
    if (v->is_number_integer()) {
      if constexpr (std::is_unsigned_v<Int>) {
        if (v->is_number_unsigned()) {
          out = v->get<Int>();
          return;
        }
        throw ValidationError(where(key), "expected a non-negative integer");
      } else {
        out = static_cast<Int>(v->get<std::int64_t>());
        return;
      }
    }
    throw ValidationError(where(key), "expected an integer");
  }

  void boolean(const char* key, bool& out) {
    const Json* v = take(key);
    if (!v) return;
    if (!v->is_boolean()) throw ValidationError(where(key), "expected true or false");
    out = v->get<bool>();
  }

  void string(const char* key, std::string& out) {
    const Json* v = take(key);
    if (!v) return;
    if (!v->is_string()) throw ValidationError(where(key), "expected a string");
    out = v->get<std::string>();
  }

  // Missing sub-objects read as empty (all defaults).
  Reader child(const char* key) {
    const Json* v = take(key);
    static const Json kEmpty = Json::object();
    return Reader(v ? *v : kEmpty, where(key));
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.count(it.key())) throw ValidationError(where(it.key()), "unknown field");
    }
  }

  std::string where(const std::string& key) const {
    if (path_.empty()) return key;
    if (key.empty()) return path_;
    return path_ + "." + key;
  }

 private:
  const Json* take(const char* key) {
    used_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const Json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

// --- writers --------------------------------------------------------------

Json to_json(const WorkloadSpec& w) {
  return Json{
      {"mmpp",
       {{"lambda_low", w.mmpp.lambda_low},
        {"lambda_high", w.mmpp.lambda_high},
        {"mean_dwell_low", w.mmpp.mean_dwell_low},
        {"mean_dwell_high", w.mmpp.mean_dwell_high}}},
      {"duration", w.duration},
      {"num_clients", w.num_clients},
      {"pool_size", w.pool_size},
      {"seed", w.seed},
      {"batch_size", w.batch_size},
      {"payload_bytes", w.payload_bytes},
      {"initial_state", to_string(w.initial_state)},
      {"target_requests", w.target_requests},
      {"count_tolerance", w.count_tolerance},
      {"max_attempts", w.max_attempts},
  };
}

Json to_json(const DedicatedServerConfig& c) {
  return Json{
      {"workers", c.workers},
      {"service_time", c.service_time},
      {"distribution",
       c.distribution == ServiceDistribution::kExponential ? "exponential" : "deterministic"},
      {"queue_capacity", num_or_null(c.queue_capacity)},
      {"request_timeout", num_or_null(c.request_timeout)},
  };
}

Json platform_json(const PlatformSpec& platform) {
  if (const auto* s = std::get_if<ServerlessPlatform>(&platform)) {
    const ServerlessConfig& c = s->config;
    const ColdStartProfile& cs = s->cold_start;
    return Json{
        {"kind", "serverless"},
        {"memory_gb", c.memory_gb},
        {"idle_timeout", num_or_null(c.idle_timeout)},
        {"provisioned_concurrency", c.provisioned_concurrency},
        {"per_instance_concurrency", c.per_instance_concurrency},
        {"memory_reference_gb", c.memory_reference_gb},
        {"memory_saturation_gb", num_or_null(c.memory_saturation_gb)},
        {"overflow_spawn_factor",
         c.overflow_spawn_factor ? Json(*c.overflow_spawn_factor) : Json(nullptr)},
        {"network_overhead", c.network_overhead},
        {"n_inferences", c.n_inferences},
        {"extra_download_bytes", c.extra_download_bytes},
        {"cold_start",
         {{"container_overhead", cs.container_overhead},
          {"download_bandwidth", cs.download_bandwidth},
          {"download_latency", cs.download_latency},
          {"image_pull_probability", cs.image_pull_probability},
          {"image_pull_time", cs.image_pull_time},
          {"container_image_bytes", cs.container_image_bytes}}},
    };
  }
  if (const auto* m = std::get_if<ManagedPlatform>(&platform)) {
    const ManagedConfig& c = m->config;
    return Json{
        {"kind", "managed"},
        {"base", to_json(c.base)},
        {"min_instances", c.min_instances},
        {"max_instances", c.max_instances},
        {"target_backlog_per_instance", c.target_backlog_per_instance},
        {"scale_up_delay", c.scale_up_delay},
        {"error_backlog_threshold", num_or_null(c.error_backlog_threshold)},
        {"autoscale_interval", c.autoscale_interval},
    };
  }
  Json j{{"kind", "dedicated"}};
  const Json fields = to_json(std::get<DedicatedPlatform>(platform).config);
  for (const auto& [k, v] : fields.items()) j[k] = v;
  return j;
}

Json pricing_json(const PricingSpec& pricing) {
  if (const auto* s = std::get_if<ServerlessPricing>(&pricing)) {
    return Json{{"kind", "serverless"},
                {"per_million_requests", s->per_million_requests},
                {"per_gb_second", s->per_gb_second},
                {"billing_granularity", s->billing_granularity}};
  }
  return Json{{"kind", "hourly"}, {"per_hour", std::get<HourlyPricing>(pricing).per_hour}};
}

// --- readers --------------------------------------------------------------

WorkloadSpec read_workload(Reader r) {
  WorkloadSpec w;
  {
    Reader m = r.child("mmpp");
    m.number("lambda_low", w.mmpp.lambda_low);
    m.number("lambda_high", w.mmpp.lambda_high);
    m.number("mean_dwell_low", w.mmpp.mean_dwell_low);
    m.number("mean_dwell_high", w.mmpp.mean_dwell_high);
    m.finish();
  }
  r.number("duration", w.duration);
  r.integer("num_clients", w.num_clients);
  r.integer("pool_size", w.pool_size);
  r.integer("seed", w.seed);
  r.integer("batch_size", w.batch_size);
  r.number("payload_bytes", w.payload_bytes);
  std::string state = to_string(w.initial_state);
  r.string("initial_state", state);
  try {
    w.initial_state = initial_state_from_string(state);
  } catch (const ParameterError& e) {
    throw ValidationError(r.where("initial_state"), e.what());
  }
  r.integer("target_requests", w.target_requests);
  r.number("count_tolerance", w.count_tolerance);
  r.integer("max_attempts", w.max_attempts);
  r.finish();
  return w;
}

DedicatedServerConfig read_dedicated(Reader& r) {
  DedicatedServerConfig c;
  r.integer("workers", c.workers);
  r.number("service_time", c.service_time);
  std::string dist = "deterministic";
  r.string("distribution", dist);
  if (dist == "exponential") {
    c.distribution = ServiceDistribution::kExponential;
  } else if (dist != "deterministic") {
    throw ValidationError(r.where("distribution"), "expected deterministic or exponential");
  }
  r.number("queue_capacity", c.queue_capacity, true);
  r.number("request_timeout", c.request_timeout, true);
  return c;
}

PlatformSpec read_platform(Reader r) {
  std::string kind = "serverless";
  r.string("kind", kind);
  if (kind == "serverless") {
    ServerlessPlatform p;
    ServerlessConfig& c = p.config;
    r.number("memory_gb", c.memory_gb);
    r.number("idle_timeout", c.idle_timeout, true);
    r.integer("provisioned_concurrency", c.provisioned_concurrency);
    r.integer("per_instance_concurrency", c.per_instance_concurrency);
    r.number("memory_reference_gb", c.memory_reference_gb);
    r.number("memory_saturation_gb", c.memory_saturation_gb, true);
    r.optional_number("overflow_spawn_factor", c.overflow_spawn_factor);
    r.number("network_overhead", c.network_overhead);
    r.integer("n_inferences", c.n_inferences);
    r.number("extra_download_bytes", c.extra_download_bytes);
    Reader cs = r.child("cold_start");
    cs.number("container_overhead", p.cold_start.container_overhead);
    cs.number("download_bandwidth", p.cold_start.download_bandwidth);
    cs.number("download_latency", p.cold_start.download_latency);
    cs.number("image_pull_probability", p.cold_start.image_pull_probability);
    cs.number("image_pull_time", p.cold_start.image_pull_time);
    cs.number("container_image_bytes", p.cold_start.container_image_bytes);
    cs.finish();
    r.finish();
    return p;
  }
  if (kind == "managed") {
    ManagedPlatform p;
    ManagedConfig& c = p.config;
    Reader base = r.child("base");
    c.base = read_dedicated(base);
    base.finish();
    r.integer("min_instances", c.min_instances);
    r.integer("max_instances", c.max_instances);
    r.number("target_backlog_per_instance", c.target_backlog_per_instance);
    r.number("scale_up_delay", c.scale_up_delay);
    r.number("error_backlog_threshold", c.error_backlog_threshold, true);
    r.number("autoscale_interval", c.autoscale_interval);
    r.finish();
    return p;
  }
  if (kind == "dedicated") {
    DedicatedPlatform p;
    p.config = read_dedicated(r);
    r.finish();
    return p;
  }
  throw ValidationError(r.where("kind"), "expected serverless, managed or dedicated");
}

PricingSpec read_pricing(Reader r, const PlatformSpec& platform) {
  std::string kind =
      std::holds_alternative<ServerlessPlatform>(platform) ? "serverless" : "hourly";
  r.string("kind", kind);
  if (kind == "serverless") {
    ServerlessPricing p;
    r.number("per_million_requests", p.per_million_requests);
    r.number("per_gb_second", p.per_gb_second);
    r.number("billing_granularity", p.billing_granularity);
    r.finish();
    return p;
  }
  if (kind == "hourly") {
    HourlyPricing p;
    r.number("per_hour", p.per_hour);
    r.finish();
    return p;
  }
  throw ValidationError(r.where("kind"), "expected serverless or hourly");
}

ScenarioSpec read_scenario(const Json& doc) {
  Reader r(doc, "");
  ScenarioSpec s;
  std::string rng(kRngAlgorithm);
  r.string("rng", rng);
  if (rng != kRngAlgorithm) {
    throw ValidationError("rng", "unsupported generator '" + rng + "'");
  }
  r.string("name", s.name);
  r.string("workload_label", s.workload_label);
  s.workload = read_workload(r.child("workload"));
  s.platform = read_platform(r.child("platform"));
  {
    Reader m = r.child("model");
    m.string("name", s.model.name);
    m.number("artifact_bytes", s.model.artifact_bytes);
    m.boolean("packed_in_image", s.model.packed_in_image);
    m.number("predict_warm", s.model.predict_warm);
    m.number("predict_cold_extra", s.model.predict_cold_extra);
    m.finish();
  }
  {
    Reader m = r.child("runtime");
    m.string("name", s.runtime.name);
    m.number("import_time", s.runtime.import_time);
    m.number("load_time", s.runtime.load_time);
    m.number("predict_scale", s.runtime.predict_scale);
    m.finish();
  }
  s.pricing = read_pricing(r.child("pricing"), s.platform);
  {
    Reader o = r.child("output");
    o.number("latency_bucket", s.output.latency_bucket);
    o.number("instance_bucket", s.output.instance_bucket);
    o.boolean("trace_events", s.output.trace_events);
    o.finish();
  }
  r.finish();
  return s;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string(), std::string("parse error: ") + e.what());
  }
}

}  // namespace

namespace {

// Deep merge of `patch` onto `target`. Unlike RFC 7396 merge-patch, a null
// in the patch is kept as a value (it means "unbounded").
void overlay(Json& target, const Json& patch) {
  if (!patch.is_object() || !target.is_object()) {
    target = patch;
    return;
  }
  for (const auto& [key, value] : patch.items()) {
    if (target.contains(key) && target[key].is_object() && value.is_object()) {
      overlay(target[key], value);
    } else {
      target[key] = value;
    }
  }
}

}  // namespace

Json scenario_to_json(const ScenarioSpec& spec) {
  return Json{
      {"rng", std::string(kRngAlgorithm)},
      {"name", spec.name},
      {"workload_label", spec.workload_label},
      {"workload", to_json(spec.workload)},
      {"platform", platform_json(spec.platform)},
      {"model",
       {{"name", spec.model.name},
        {"artifact_bytes", spec.model.artifact_bytes},
        {"packed_in_image", spec.model.packed_in_image},
        {"predict_warm", spec.model.predict_warm},
        {"predict_cold_extra", spec.model.predict_cold_extra}}},
      {"runtime",
       {{"name", spec.runtime.name},
        {"import_time", spec.runtime.import_time},
        {"load_time", spec.runtime.load_time},
        {"predict_scale", spec.runtime.predict_scale}}},
      {"pricing", pricing_json(spec.pricing)},
      {"output",
       {{"latency_bucket", spec.output.latency_bucket},
        {"instance_bucket", spec.output.instance_bucket},
        {"trace_events", spec.output.trace_events}}},
  };
}

ScenarioSpec scenario_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("scenario", "expected an object");
  ScenarioSpec spec;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ValidationError("preset", "expected a string");
    Json merged = scenario_to_json(preset(doc["preset"].get<std::string>()));
    Json patch = doc;
    patch.erase("preset");
    overlay(merged, patch);
    spec = read_scenario(merged);
  } else {
    spec = read_scenario(doc);
  }
  spec.validate();
  return spec;
}

ScenarioSpec load_scenario(const std::string& source) {
  const std::filesystem::path path(source);
  if (!std::filesystem::exists(path)) {
    if (source.find('/') == std::string::npos && source.find(".json") == std::string::npos) {
      return preset(source);
    }
    throw ValidationError(source, "no such file");
  }
  const Json doc = read_json_file(path);
  if (doc.is_object() && doc.contains("manifest_version")) {
    if (!doc.contains("scenario")) throw ValidationError("scenario", "missing in manifest");
    return scenario_from_json(doc["scenario"]);
  }
  return scenario_from_json(doc);
}

Json sweep_to_json(const SweepSpec& sweep) {
  return Json{{"base", scenario_to_json(sweep.base)},
              {"axis", to_string(sweep.axis)},
              {"values", sweep.values}};
}

SweepSpec sweep_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("sweep", "expected an object");
  SweepSpec s;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "base" && it.key() != "axis" && it.key() != "values")
      throw ValidationError(it.key(), "unknown field");
  }
  if (!doc.contains("base")) throw ValidationError("base", "missing");
  if (doc["base"].is_string()) {
    s.base = preset(doc["base"].get<std::string>());
  } else {
    try {
      s.base = scenario_from_json(doc["base"]);
    } catch (const ValidationError& e) {
      const std::string what = e.what();
      throw ValidationError("base." + e.field(), what.substr(e.field().size() + 2));
    }
  }
  if (!doc.contains("axis") || !doc["axis"].is_string())
    throw ValidationError("axis", "expected a string");
  s.axis = sweep_axis_from_string(doc["axis"].get<std::string>());
  if (!doc.contains("values") || !doc["values"].is_array())
    throw ValidationError("values", "expected an array of numbers");
  for (const auto& v : doc["values"]) {
    if (!v.is_number()) throw ValidationError("values", "expected an array of numbers");
    s.values.push_back(v.get<double>());
  }
  s.validate();
  return s;
}

SweepSpec load_sweep(const std::filesystem::path& path) {
  return sweep_from_json(read_json_file(path));
}

}  // namespace servesim

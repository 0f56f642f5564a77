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

#include "servesim/workload.h"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "servesim/errors.h"
#include "servesim/rng.h"

namespace servesim {

void MmppParams::validate() const {
  if (!(lambda_low > 0.0)) throw ParameterError("mmpp.lambda_low must be > 0");
  if (!(lambda_high >= lambda_low))
    throw ParameterError("mmpp.lambda_high must be >= lambda_low");
  if (!(mean_dwell_low > 0.0))
    throw ParameterError("mmpp.mean_dwell_low must be > 0");
  if (!(mean_dwell_high > 0.0))
    throw ParameterError("mmpp.mean_dwell_high must be > 0");
}

void WorkloadSpec::validate() const {
  mmpp.validate();
  if (!(duration >= 0.0) || !std::isfinite(duration))
    throw ParameterError("workload.duration must be finite and >= 0");
  if (num_clients < 1) throw ParameterError("workload.num_clients must be >= 1");
  if (pool_size < 1) throw ParameterError("workload.pool_size must be >= 1");
  if (batch_size < 1) throw ParameterError("workload.batch_size must be >= 1");
  if (!(payload_bytes >= 0.0))
    throw ParameterError("workload.payload_bytes must be >= 0");
  if (target_requests < 0)
    throw ParameterError("workload.target_requests must be >= 0");
  if (!(count_tolerance > 0.0))
    throw ParameterError("workload.count_tolerance must be > 0");
  if (max_attempts < 1) throw ParameterError("workload.max_attempts must be >= 1");
}

std::string to_string(InitialState s) {
  switch (s) {
    case InitialState::kLow: return "low";
    case InitialState::kHigh: return "high";
    case InitialState::kStationary: return "stationary";
  }
  return "low";
}

InitialState initial_state_from_string(const std::string& s) {
  if (s == "low") return InitialState::kLow;
  if (s == "high") return InitialState::kHigh;
  if (s == "stationary") return InitialState::kStationary;
  throw ParameterError("unknown initial_state '" + s + "'");
}

double mean_rate(const MmppParams& params) {
  params.validate();
  const double total = params.mean_dwell_low + params.mean_dwell_high;
  const double pi_high = params.mean_dwell_high / total;
  return (1.0 - pi_high) * params.lambda_low + pi_high * params.lambda_high;
}

double dwell_low_for_rate(double lambda_low, double lambda_high,
                          double mean_dwell_high, double target_rate) {
  if (!(lambda_low < target_rate && target_rate < lambda_high))
    throw ParameterError("target rate must lie strictly between the two rates");
  return mean_dwell_high * (lambda_high - target_rate) /
         (target_rate - lambda_low);
}

namespace {

GeneratedWorkload generate_once(const WorkloadSpec& spec, int attempt) {
  GeneratedWorkload out;
  if (spec.duration <= 0.0) return out;
  const MmppParams& p = spec.mmpp;
  CounterRng rng(spec.seed, RngStream::kArrivals,
                 static_cast<std::uint64_t>(attempt));

  bool high = false;
  switch (spec.initial_state) {
    case InitialState::kLow: high = false; break;
    case InitialState::kHigh: high = true; break;
    case InitialState::kStationary:
      high = rng.uniform() <
             p.mean_dwell_high / (p.mean_dwell_low + p.mean_dwell_high);
      break;
  }

  double t = 0.0;
  while (t < spec.duration) {
    const double dwell = rng.exponential(1.0 / (high ? p.mean_dwell_high
                                                     : p.mean_dwell_low));
    const double end = std::min(spec.duration, t + dwell);
    const double rate = high ? p.lambda_high : p.lambda_low;
    if (high) out.bursts.push_back({t, end});
    double x = t;
    while (true) {
      x += rng.exponential(rate);
      if (x >= end) break;
      RequestEvent ev;
      ev.request_id = static_cast<std::int64_t>(out.events.size());
      ev.arrival_time = x;
      ev.payload_bytes = spec.payload_bytes;
      out.events.push_back(std::move(ev));
    }
    t = end;
    high = !high;
  }
  return out;
}

}  // namespace

GeneratedWorkload generate_workload(const WorkloadSpec& spec) {
  spec.validate();
  if (spec.target_requests == 0) return generate_once(spec, 0);
  const double lo = spec.target_requests * (1.0 - spec.count_tolerance);
  const double hi = spec.target_requests * (1.0 + spec.count_tolerance);
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    GeneratedWorkload w = generate_once(spec, attempt);
    const auto n = static_cast<double>(w.events.size());
    if (n >= lo && n <= hi) {
      w.attempts = attempt + 1;
      return w;
    }
  }
  throw ParameterError(
      "workload: no MMPP path matched target_requests within "
      "count_tolerance; check that the MMPP mean rate is consistent with "
      "the target");
}

std::vector<RequestEvent> generate_arrivals(const WorkloadSpec& spec) {
  return generate_workload(spec).events;
}

std::vector<std::vector<RequestEvent>> split_clients(
    std::span<const RequestEvent> events, int num_clients) {
  if (num_clients < 1) throw ParameterError("num_clients must be >= 1");
  std::vector<std::vector<RequestEvent>> streams(num_clients);
  for (auto& s : streams) s.reserve(events.size() / num_clients + 1);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const int c = static_cast<int>(i % static_cast<std::size_t>(num_clients));
    RequestEvent ev = events[i];
    ev.client_id = c;
    streams[c].push_back(std::move(ev));
  }
  return streams;
}

std::vector<RequestEvent> assign_payloads(std::vector<RequestEvent> events,
                                          int pool_size, std::uint64_t seed) {
  if (pool_size < 1) throw ParameterError("pool_size must be >= 1");
  CounterRng rng(seed, RngStream::kPayloads);
  for (auto& ev : events) {
    ev.payload_id = static_cast<int>(rng.below(static_cast<std::uint64_t>(pool_size)));
  }
  return events;
}

std::vector<RequestEvent> batch_requests(
    std::span<const RequestEvent> client_stream, int batch_size) {
  if (batch_size < 1) throw ParameterError("batch_size must be >= 1");
  std::vector<RequestEvent> out;
  if (batch_size == 1) {
    out.assign(client_stream.begin(), client_stream.end());
    return out;
  }
  out.reserve(client_stream.size() / batch_size + 1);
  for (std::size_t i = 0; i < client_stream.size(); i += batch_size) {
    const std::size_t end =
        std::min(client_stream.size(), i + static_cast<std::size_t>(batch_size));
    RequestEvent inv = client_stream[end - 1];
    inv.batch_count = static_cast<int>(end - i);
    inv.payload_bytes = 0.0;
    inv.sample_ids.clear();
    for (std::size_t j = i; j < end; ++j) {
      inv.payload_bytes += client_stream[j].payload_bytes;
      inv.sample_ids.push_back(client_stream[j].request_id);
    }
    out.push_back(std::move(inv));
  }
  return out;
}

InvocationStream build_invocations(const WorkloadSpec& spec) {
  GeneratedWorkload gen = generate_workload(spec);
  InvocationStream s;
  s.bursts = std::move(gen.bursts);
  std::vector<RequestEvent> events =
      assign_payloads(std::move(gen.events), spec.pool_size, spec.seed);
  auto streams = split_clients(events, spec.num_clients);

  s.requests.resize(events.size());
  for (const auto& stream : streams) {
    for (const auto& ev : stream) s.requests[ev.request_id] = ev;
    auto inv = batch_requests(stream, spec.batch_size);
    s.invocations.insert(s.invocations.end(),
                         std::make_move_iterator(inv.begin()),
                         std::make_move_iterator(inv.end()));
  }
  std::sort(s.invocations.begin(), s.invocations.end(),
            [](const RequestEvent& a, const RequestEvent& b) {
              if (a.arrival_time != b.arrival_time)
                return a.arrival_time < b.arrival_time;
              return a.request_id < b.request_id;
            });
  return s;
}

void write_workload_csv(std::ostream& out, std::span<const RequestEvent> events) {
  out << "request_id,client_id,arrival_time_s,payload_id,payload_bytes,batch_count\n";
  char buf[160];
  for (const auto& ev : events) {
    std::snprintf(buf, sizeof(buf), "%" PRId64 ",%d,%.6f,%d,%.0f,%d\n",
                  ev.request_id, ev.client_id, ev.arrival_time, ev.payload_id,
                  ev.payload_bytes, ev.batch_count);
    out << buf;
  }
}

std::vector<RequestEvent> read_workload_csv(std::istream& in) {
  std::vector<RequestEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("request_id", 0) == 0) continue;
    RequestEvent ev;
    std::istringstream ss(line);
    char c1, c2, c3, c4, c5;
    if (!(ss >> ev.request_id >> c1 >> ev.client_id >> c2 >> ev.arrival_time >>
          c3 >> ev.payload_id >> c4 >> ev.payload_bytes >> c5 >> ev.batch_count) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',') {
      throw DataError("workload csv: malformed line " + std::to_string(line_no));
    }
    events.push_back(ev);
  }
  return events;
}

}  // namespace servesim

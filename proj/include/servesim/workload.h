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
#include <span>
#include <string>
#include <vector>

namespace servesim {

// Two-state Markov-modulated Poisson process. Rates in requests/second,
// dwell means in seconds.
struct MmppParams {
  double lambda_low = 8.0;
  double lambda_high = 40.0;
  double mean_dwell_low = 161.5;
  double mean_dwell_high = 60.0;

  void validate() const;  // throws ParameterError
  bool operator==(const MmppParams&) const = default;
};

enum class InitialState { kLow, kHigh, kStationary };

std::string to_string(InitialState s);
InitialState initial_state_from_string(const std::string& s);

struct WorkloadSpec {
  MmppParams mmpp;
  double duration = 900.0;
  int num_clients = 8;
  int pool_size = 200;
  std::uint64_t seed = 1;
  int batch_size = 1;
  double payload_bytes = 150'000.0;
  InitialState initial_state = InitialState::kLow;
  // When > 0, modulating paths are redrawn until the realized request count
  // lies within target_requests * (1 +/- count_tolerance).
  std::int64_t target_requests = 0;
  double count_tolerance = 0.05;
  int max_attempts = 10'000;

  void validate() const;  // throws ParameterError
  bool operator==(const WorkloadSpec&) const = default;
};

struct RequestEvent {
  std::int64_t request_id = 0;
  int client_id = 0;
  double arrival_time = 0.0;
  int payload_id = 0;
  double payload_bytes = 0.0;
  int batch_count = 1;
  // Ids of the samples carried by a batched invocation; empty for a plain
  // request (the request itself is the only sample).
  std::vector<std::int64_t> sample_ids;

  bool operator==(const RequestEvent&) const = default;
};

// Interval [start, end) spent in the high-rate state.
struct BurstInterval {
  double start = 0.0;
  double end = 0.0;
  bool operator==(const BurstInterval&) const = default;
};

struct GeneratedWorkload {
  std::vector<RequestEvent> events;
  std::vector<BurstInterval> bursts;
  int attempts = 1;
};

// Stationary mean rate of the modulated process.
double mean_rate(const MmppParams& params);

// Solves mean_dwell_low so that the stationary mean rate equals
// target_rate, keeping the other three parameters.
double dwell_low_for_rate(double lambda_low, double lambda_high,
                          double mean_dwell_high, double target_rate);

// MMPP arrivals over [0, duration], with payload ids and client ids unset.
std::vector<RequestEvent> generate_arrivals(const WorkloadSpec& spec);
GeneratedWorkload generate_workload(const WorkloadSpec& spec);

// Round-robin split by arrival order.
std::vector<std::vector<RequestEvent>> split_clients(
    std::span<const RequestEvent> events, int num_clients);

std::vector<RequestEvent> assign_payloads(std::vector<RequestEvent> events,
                                          int pool_size, std::uint64_t seed);

// Groups consecutive requests of one client into invocations of batch_size
// samples; the final invocation carries the remainder. The invocation takes
// the id and arrival time of its last sample.
std::vector<RequestEvent> batch_requests(
    std::span<const RequestEvent> client_stream, int batch_size);

// Full client-side pipeline: generate, assign payloads, split, batch, and
// merge back into one invocation stream ordered by (arrival_time, request_id).
struct InvocationStream {
  std::vector<RequestEvent> requests;     // every sample, by request_id
  std::vector<RequestEvent> invocations;  // what the platform sees
  std::vector<BurstInterval> bursts;
};
InvocationStream build_invocations(const WorkloadSpec& spec);

// CSV: request_id,client_id,arrival_time_s,payload_id,payload_bytes,batch_count
void write_workload_csv(std::ostream& out, std::span<const RequestEvent> events);
std::vector<RequestEvent> read_workload_csv(std::istream& in);

}  // namespace servesim

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
#include <queue>
#include <string_view>
#include <vector>

namespace servesim {

enum class EventKind : std::uint8_t {
  kRequestArrival,
  kInstanceWarm,
  kServiceComplete,
  kAutoscaleTick,
  kIdleReap,
  kWorkloadEnd,
};

std::string_view to_string(EventKind kind);

struct SimEvent {
  double time = 0.0;
  std::uint64_t sequence = 0;  // assigned by EventQueue::schedule
  EventKind kind = EventKind::kRequestArrival;
  // Kind-specific payload: invocation index, instance id, generation tag.
  std::int64_t subject = -1;
  std::int64_t aux = 0;
};

class SimClock {
 public:
  double now() const { return now_; }
  // Throws SimLogicError if t < now.
  void advance_to(double t);

 private:
  double now_ = 0.0;
};

// Min-queue on (time, sequence). Sequence numbers are handed out in
// scheduling order, so simultaneous events pop FIFO.
class EventQueue {
 public:
  // Throws SimLogicError when event.time < clock.now().
  std::uint64_t schedule(SimEvent event);
  SimEvent pop();  // advances the clock
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  const SimClock& clock() const { return clock_; }
  double now() const { return clock_.now(); }
  std::uint64_t popped() const { return popped_; }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.sequence > b.sequence;
    }
  };
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
  SimClock clock_;
  std::uint64_t next_sequence_ = 0;
  std::uint64_t popped_ = 0;
};

}  // namespace servesim

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

#include "servesim/event_queue.h"

#include <cmath>
#include <string>

#include "servesim/errors.h"

namespace servesim {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kRequestArrival: return "RequestArrival";
    case EventKind::kInstanceWarm: return "InstanceWarm";
    case EventKind::kServiceComplete: return "ServiceComplete";
    case EventKind::kAutoscaleTick: return "AutoscaleTick";
    case EventKind::kIdleReap: return "IdleReap";
    case EventKind::kWorkloadEnd: return "WorkloadEnd";
  }
  return "Unknown";
}

void SimClock::advance_to(double t) {
  if (t < now_) {
    throw SimLogicError("clock moved backwards: " + std::to_string(t) + " < " +
                        std::to_string(now_));
  }
  now_ = t;
}

std::uint64_t EventQueue::schedule(SimEvent event) {
  if (std::isnan(event.time) || event.time < clock_.now()) {
    throw SimLogicError("event scheduled in the past: t=" +
                        std::to_string(event.time) +
                        " now=" + std::to_string(clock_.now()));
  }
  event.sequence = next_sequence_++;
  heap_.push(event);
  return event.sequence;
}

SimEvent EventQueue::pop() {
  if (heap_.empty()) throw SimLogicError("pop from empty event queue");
  SimEvent ev = heap_.top();
  heap_.pop();
  clock_.advance_to(ev.time);
  ++popped_;
  return ev;
}

}  // namespace servesim

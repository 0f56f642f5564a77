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

#include <gtest/gtest.h>

#include <cmath>

#include "servesim/errors.h"

namespace servesim {
namespace {

SimEvent at(double t, std::int64_t subject = 0) {
  return {t, 0, EventKind::kRequestArrival, subject, 0};
}

TEST(EventQueue, PopsEarliestFirst) {
  EventQueue q;
  q.schedule(at(5));
  q.schedule(at(3));
  EXPECT_DOUBLE_EQ(q.pop().time, 3.0);
  EXPECT_DOUBLE_EQ(q.now(), 3.0);
  EXPECT_DOUBLE_EQ(q.pop().time, 5.0);
  EXPECT_TRUE(q.empty());
  EXPECT_EQ(q.popped(), 2u);
}

TEST(EventQueue, TiesPopInSchedulingOrder) {
  EventQueue q;
  q.schedule(at(3, 1));
  q.schedule(at(3, 2));
  q.schedule(at(3, 3));
  EXPECT_EQ(q.pop().subject, 1);
  EXPECT_EQ(q.pop().subject, 2);
  EXPECT_EQ(q.pop().subject, 3);
}

TEST(EventQueue, SchedulingInThePastIsLogicError) {
  EventQueue q;
  q.schedule(at(2));
  q.pop();
  EXPECT_THROW(q.schedule(at(1)), SimLogicError);
  EXPECT_THROW(q.schedule(at(std::nan(""))), SimLogicError);
  EXPECT_NO_THROW(q.schedule(at(2)));
}

TEST(EventQueue, SequenceNumbersAreUnique) {
  EventQueue q;
  const auto a = q.schedule(at(1));
  const auto b = q.schedule(at(1));
  EXPECT_NE(a, b);
}

TEST(SimClock, NeverMovesBackwards) {
  SimClock c;
  c.advance_to(4.0);
  EXPECT_THROW(c.advance_to(3.0), SimLogicError);
  EXPECT_DOUBLE_EQ(c.now(), 4.0);
}

TEST(EventKindNames, AreStable) {
  EXPECT_EQ(to_string(EventKind::kRequestArrival), "RequestArrival");
  EXPECT_EQ(to_string(EventKind::kWorkloadEnd), "WorkloadEnd");
}

}  // namespace
}  // namespace servesim

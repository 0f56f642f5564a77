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

#include "servesim/billing.h"

#include <gtest/gtest.h>

#include <vector>

#include "servesim/errors.h"

namespace servesim {
namespace {

RequestRecord invocation(std::int64_t id, double billed) {
  RequestRecord r;
  r.request_id = id;
  r.invocation_id = id;
  r.billed_duration = billed;
  return r;
}

TEST(ServerlessCost, NoInvocationsIsFree) {
  EXPECT_EQ(serverless_cost({}, 2.0, ServerlessPricing{}), 0.0);
}

TEST(ServerlessCost, SingleInvocation) {
  const double p = 1.66667e-5, f = 0.20;
  const std::vector<RequestRecord> recs{invocation(0, 1.0)};
  EXPECT_EQ(serverless_cost(recs, 2.0, {f, p, 0.001}), 1.0 * 2.0 * p + f / 1e6);
}

TEST(ServerlessCost, RoundingOracle) {
  // 100 invocations of 0.25 s at 0.1 s granularity bill 0.3 s each.
  const double p = 1.66667e-5, f = 0.20;
  std::vector<RequestRecord> recs;
  for (int i = 0; i < 100; ++i) recs.push_back(invocation(i, 0.25));
  const double expected = 300.0 * 0.1 * 2.0 * p + 100.0 * f / 1e6;  // 300 units of 0.1 s
  EXPECT_EQ(serverless_cost(recs, 2.0, {f, p, 0.1}), expected);
  EXPECT_EQ(billed_units(0.25, 0.1), 3);
  EXPECT_EQ(billed_units(0.3, 0.1), 3);
  EXPECT_EQ(billed_units(0.0, 0.1), 0);
  EXPECT_EQ(billed_units(0.0011, 0.001), 2);
}

TEST(ServerlessCost, BatchedSamplesBillOnce) {
  std::vector<RequestRecord> recs;
  for (int i = 0; i < 4; ++i) {
    RequestRecord r = invocation(i, 0.5);
    r.invocation_id = 3;
    recs.push_back(r);
  }
  EXPECT_EQ(serverless_cost(recs, 1.0, {1.0, 1.0, 0.001}), 0.5 + 1e-6);
}

TEST(ServerlessCost, NegativeDurationIsDataError) {
  const std::vector<RequestRecord> recs{invocation(0, -0.1)};
  EXPECT_THROW(serverless_cost(recs, 2.0, ServerlessPricing{}), DataError);
}

TEST(DedicatedCost, Examples) {
  EXPECT_EQ(dedicated_server_cost(0.0, {0.37}), 0.0);
  EXPECT_NEAR(dedicated_server_cost(900.0, {0.37}), 0.0925, 1e-12);
  EXPECT_NEAR(dedicated_server_cost(900.0, {0.75}), 0.1875, 1e-12);
  // Table-level figures: CPU about 0.089-0.092, GPU 0.181-0.187.
  EXPECT_NEAR(dedicated_server_cost(900.0, {0.37}), 0.0905, 0.003);
  EXPECT_NEAR(dedicated_server_cost(900.0, {0.75}), 0.184, 0.004);
}

TEST(ManagedCost, SingleInstanceMatchesDedicated) {
  InstanceState s;
  const std::vector<InstanceState> one{s};
  EXPECT_EQ(managed_service_cost(one, 900.0, {0.56}), dedicated_server_cost(900.0, {0.56}));
}

TEST(ManagedCost, HandSum) {
  InstanceState a, b;
  b.created_at = 420.0;
  const std::vector<InstanceState> two{a, b};
  EXPECT_DOUBLE_EQ(managed_service_cost(two, 900.0, {0.5}), (900.0 + 480.0) / 3600.0 * 0.5);
  InstanceState c;
  c.created_at = 100.0;
  c.retired_at = 400.0;
  const std::vector<InstanceState> retired{c};
  EXPECT_DOUBLE_EQ(managed_service_cost(retired, 900.0, {3600.0}), 300.0);
}

TEST(PricingValidation, RejectsNegatives) {
  EXPECT_THROW((ServerlessPricing{-1, 1, 1}.validate()), ValidationError);
  EXPECT_THROW((ServerlessPricing{1, 1, 0}.validate()), ValidationError);
  EXPECT_THROW((HourlyPricing{-0.1}.validate()), ValidationError);
}

}  // namespace
}  // namespace servesim

// Copyright 2026 The xebsample Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xebsample/bench.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "xebsample/error.hpp"

namespace xebsample {
namespace {

TEST(ExtrapolateEnumTimeTest, Examples) {
  EXPECT_DOUBLE_EQ(extrapolate_enum_time(37.5, 30, 30, 2), std::log10(37.5));
  EXPECT_NEAR(extrapolate_enum_time(1.0, 10, 20, 2), std::log10(1024.0), 1e-12);
  // 6 hours at n = 30 to n = 1023: 993 log10 2 + log10(6 / 8766) years.
  const double log10_seconds = extrapolate_enum_time(6 * 3600.0, 30, 1023, 2);
  EXPECT_NEAR(log10_seconds - std::log10(kJulianYearSeconds), 295.7581354783991, 1e-9);
}

TEST(ExtrapolateEnumTimeTest, LinearInTarget) {
  for (int d : {2, 3, 7}) {
    const double base = extrapolate_enum_time(2.5, 12, 12, d);
    for (int target : {1, 13, 100, 5000}) {
      EXPECT_NEAR(extrapolate_enum_time(2.5, 12, target, d),
                  base + (target - 12) * std::log10(static_cast<double>(d)), 1e-12);
    }
  }
}

TEST(ExtrapolateEnumTimeTest, RejectsBadInput) {
  EXPECT_THROW(extrapolate_enum_time(0.0, 10, 20, 2), InvalidParameter);
  EXPECT_THROW(extrapolate_enum_time(-1.0, 10, 20, 2), InvalidParameter);
  EXPECT_THROW(extrapolate_enum_time(1.0, 10, 20, 1), InvalidParameter);
}

TEST(AdvantageRatioTest, Examples) {
  const double years_300 = 300 + std::log10(kJulianYearSeconds);
  EXPECT_NEAR(advantage_ratio(years_300, 3e-6).log10_advantage, 313.02198271236557, 1e-9);
  EXPECT_NEAR(advantage_ratio(std::log10(5e-3), 5e-3).log10_advantage, 0.0, 1e-15);
  const double unrounded = 295.7581354783991 + std::log10(kJulianYearSeconds);
  EXPECT_NEAR(advantage_ratio(unrounded, 3e-6).log10_advantage, 308.7801181907646, 1e-9);
  EXPECT_THROW(advantage_ratio(10, 0.0), InvalidParameter);
}

TEST(AdvantageRatioTest, YearReconstruction) {
  for (double log10_seconds : {-3.0, 0.0, 42.5, 303.26}) {
    for (double per_sample : {1e-9, 3e-6, 2.0}) {
      const auto r = advantage_ratio(log10_seconds, per_sample);
      EXPECT_DOUBLE_EQ(r.log10_enum_years, log10_seconds - std::log10(kJulianYearSeconds));
      EXPECT_NEAR(r.log10_enum_years + std::log10(kJulianYearSeconds) - std::log10(per_sample),
                  r.log10_advantage, 1e-12);
    }
  }
}

TEST(TimeSamplingTest, ArithmeticContract) {
  const auto table = generate_weight_table(64, 2, 1);
  const auto rec = time_sampling(table, 100'000);
  EXPECT_EQ(rec.task, TimedTask::kSampling);
  EXPECT_EQ(rec.items, 100'000u);
  EXPECT_GT(rec.per_item_seconds, 0.0);
  EXPECT_NEAR(rec.wall_seconds, rec.per_item_seconds * 1e5, 1e-12 * rec.wall_seconds + 1e-15);
  const auto again = time_sampling(table, 100'000);
  EXPECT_LT(std::abs(std::log10(again.per_item_seconds / rec.per_item_seconds)), 1.0);
  EXPECT_THROW(time_sampling(table, 0), InvalidParameter);
}

TEST(TimeEnumerationTest, PerItemUsesOutcomeCount) {
  const auto rec = time_enumeration(generate_weight_table(16, 2, 1));
  EXPECT_EQ(rec.task, TimedTask::kEnumeration);
  EXPECT_EQ(rec.items, 65536u);
  EXPECT_GT(rec.wall_seconds, 0.0);
  EXPECT_NEAR(rec.per_item_seconds * 65536, rec.wall_seconds, 1e-12);
  EXPECT_THROW(time_enumeration(generate_weight_table(40, 2, 1)), ResourceLimit);
}

}  // namespace
}  // namespace xebsample

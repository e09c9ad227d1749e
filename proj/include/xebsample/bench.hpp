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

#ifndef XEBSAMPLE_BENCH_HPP_
#define XEBSAMPLE_BENCH_HPP_

#include <cstdint>
#include <string_view>

#include "xebsample/oracle.hpp"
#include "xebsample/weight_table.hpp"

namespace xebsample {

// Seconds per Julian year (365.25 days).
inline constexpr double kJulianYearSeconds = 31'557'600.0;

enum class TimedTask { kSampling, kEnumeration };

constexpr std::string_view to_string(TimedTask task) noexcept {
  return task == TimedTask::kSampling ? "sampling" : "enumeration";
}

// `items` is M for sampling and d^n for enumeration.
struct TimingRecord {
  TimedTask task = TimedTask::kSampling;
  int n = 0;
  int d = 0;
  std::uint64_t items = 0;
  double wall_seconds = 0;
  double per_item_seconds = 0;
};

struct AdvantageReport {
  double log10_enum_seconds = 0;
  double log10_enum_years = 0;
  double log10_per_sample_seconds = 0;
  double log10_advantage = 0;
};

// Single-threaded wall time of drawing `count` samples, preceded by an
// untimed warm-up batch. The timed loop calls draw_batch_range in chunks so
// that memory stays bounded for large n.
TimingRecord time_sampling(const WeightTable& table, std::uint64_t count,
                           std::uint64_t master_seed = 0);

// Wall time of one enumerate_pmf call; per-item cost is divided by d^n.
TimingRecord time_enumeration(const WeightTable& table,
                              std::uint64_t cap = kDefaultEnumerationCap);

// log10 of T(n_target) = T(n_ref) d^(n_target - n_ref).
double extrapolate_enum_time(double ref_seconds, int n_ref, int n_target,
                             int d);

AdvantageReport advantage_ratio(double log10_enum_seconds,
                                double per_sample_seconds);

}  // namespace xebsample

#endif  // XEBSAMPLE_BENCH_HPP_

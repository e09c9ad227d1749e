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

#include <algorithm>
#include <chrono>
#include <cmath>

#include "xebsample/error.hpp"
#include "xebsample/sampler.hpp"

namespace xebsample {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kChunk = 1024;
constexpr double kMinSeconds = 1e-9;

double seconds_since(Clock::time_point start) {
  const std::chrono::duration<double> elapsed = Clock::now() - start;
  return std::max(elapsed.count(), kMinSeconds);
}

// Returns a value derived from every sample so the work is observable.
double run_chunks(const WeightTable& table, std::uint64_t first,
                  std::uint64_t count, std::uint64_t master_seed) {
  double checksum = 0;
  for (std::uint64_t done = 0; done < count;) {
    const std::uint64_t take = std::min(kChunk, count - done);
    const auto batch =
        draw_batch_range(table, first + done, take, master_seed, 1);
    checksum += batch.log_probs.back();
    done += take;
  }
  return checksum;
}

}  // namespace

TimingRecord time_sampling(const WeightTable& table, std::uint64_t count,
                           std::uint64_t master_seed) {
  if (count == 0) throw InvalidParameter("time_sampling: M must be >= 1");
  // Warm-up uses indices past the timed range.
  volatile double sink =
      run_chunks(table, count, std::min<std::uint64_t>(count, kChunk),
                 master_seed);
  const auto start = Clock::now();
  sink = sink + run_chunks(table, 0, count, master_seed);
  const double wall = seconds_since(start);
  (void)sink;
  return {TimedTask::kSampling, table.n(),  table.d(),
          count,                wall,       wall / static_cast<double>(count)};
}

TimingRecord time_enumeration(const WeightTable& table, std::uint64_t cap) {
  const std::uint64_t count = checked_outcome_count(table.n(), table.d(), cap);
  const auto start = Clock::now();
  const auto pmf = enumerate_pmf(table, cap);
  const double wall = seconds_since(start);
  volatile double sink = pmf.probs(0);
  (void)sink;
  return {TimedTask::kEnumeration, table.n(), table.d(),
          count,                   wall,      wall / static_cast<double>(count)};
}

double extrapolate_enum_time(double ref_seconds, int n_ref, int n_target,
                             int d) {
  if (!(ref_seconds > 0) || !std::isfinite(ref_seconds)) {
    throw InvalidParameter("extrapolate_enum_time: reference time must be > 0");
  }
  if (n_ref < 1 || n_target < 1) {
    throw InvalidParameter("extrapolate_enum_time: n must be >= 1");
  }
  if (d < 2) throw InvalidParameter("extrapolate_enum_time: d must be >= 2");
  return std::log10(ref_seconds) +
         static_cast<double>(n_target - n_ref) * std::log10(static_cast<double>(d));
}

AdvantageReport advantage_ratio(double log10_enum_seconds,
                                double per_sample_seconds) {
  if (!(per_sample_seconds > 0) || !std::isfinite(per_sample_seconds)) {
    throw InvalidParameter("advantage_ratio: per-sample time must be > 0");
  }
  AdvantageReport report;
  report.log10_enum_seconds = log10_enum_seconds;
  report.log10_enum_years = log10_enum_seconds - std::log10(kJulianYearSeconds);
  report.log10_per_sample_seconds = std::log10(per_sample_seconds);
  report.log10_advantage = log10_enum_seconds - report.log10_per_sample_seconds;
  return report;
}

}  // namespace xebsample

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

#include "xebsample/xeb.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace xebsample {
namespace {

using testing::near_relative;
using testing::point_mass_table;
using testing::uniform_table;
using testing::worked_example_table;

constexpr XebMode kNaive = XebMode::kEmpiricalNaive;
constexpr XebMode kLogspace = XebMode::kEmpiricalLogspace;

SampleBatch batch_of(const WeightTable& table, std::vector<DigitString> samples) {
  return batch_from_samples(table, std::span<const DigitString>(samples));
}

void expect_consistent(const XebEstimate& est) {
  if (std::isfinite(est.value)) {
    EXPECT_LE(std::abs(est.value - std::expm1(est.log1p_value)),
              1e-9 * std::max(1.0, std::abs(est.value)))
        << to_string(est.mode) << " n=" << est.n;
  }
  EXPECT_TRUE(std::isfinite(est.log1p_value));
  EXPECT_EQ(est.sample_count.has_value(), is_empirical(est.mode));
  if (!is_empirical(est.mode)) {
    EXPECT_FALSE(est.standard_error.has_value());
  }
}

TEST(LogSumExpTest, StableForTinyTerms) {
  const std::vector<double> v = {-2000, -2001};
  EXPECT_NEAR(logsumexp<double>(v), -2000 + std::log1p(std::exp(-1.0)), 1e-12);
  EXPECT_EQ(logsumexp<double>({}), -std::numeric_limits<double>::infinity());
  const std::vector<double> ninf(3, -std::numeric_limits<double>::infinity());
  EXPECT_EQ(logsumexp<double>(ninf), -std::numeric_limits<double>::infinity());
}

TEST(EmpiricalXebTest, PointMass) {
  const auto table = point_mass_table(2, 2);
  const auto batch = draw_batch(table, 1000, 3);
  const auto naive = empirical_xeb(table, batch, kNaive);
  EXPECT_EQ(naive.value, 3.0);
  const auto logspace = empirical_xeb(table, batch, kLogspace);
  EXPECT_NEAR(logspace.value, 3.0, 1e-12);
  EXPECT_EQ(naive.standard_error, 0.0);
  expect_consistent(naive);
  expect_consistent(logspace);
}

TEST(EmpiricalXebTest, UniformIsZero) {
  for (auto [n, d] : {std::pair{3, 2}, {10, 3}, {200, 2}}) {
    const auto table = uniform_table(n, d);
    const auto batch = draw_batch(table, 500, 9);
    for (XebMode mode : {kNaive, kLogspace}) {
      const auto est = empirical_xeb(table, batch, mode);
      EXPECT_NEAR(est.value, 0.0, 1e-12) << n;
      expect_consistent(est);
    }
  }
}

TEST(EmpiricalXebTest, WorkedExampleBatch) {
  const auto table = worked_example_table();
  const auto batch = batch_of(table, {DigitString({0, 0}, 2), DigitString({1, 1}, 2)});
  for (XebMode mode : {kNaive, kLogspace}) {
    const auto est = empirical_xeb(table, batch, mode);
    EXPECT_NEAR(est.value, 0.2, 1e-12);
    EXPECT_NEAR(est.log1p_value, std::log(1.2), 1e-12);
    EXPECT_EQ(est.sample_count, 2u);
    ASSERT_TRUE(est.standard_error.has_value());
    // Values N p = {1.68, 0.72}: sample sd = 0.96 / sqrt(2), over sqrt(2).
    EXPECT_NEAR(*est.standard_error, 0.48, 1e-12);
  }
}

TEST(EmpiricalXebTest, Errors) {
  const auto table = worked_example_table();
  const auto other = draw_batch(uniform_table(3, 2), 10, 1);
  EXPECT_THROW(empirical_xeb(table, other, kNaive), InvalidParameter);
  const auto batch = draw_batch(table, 10, 1);
  EXPECT_THROW(empirical_xeb(table, batch, XebMode::kTrueClosedForm), InvalidParameter);
  EXPECT_THROW(empirical_xeb_from_log_probs<double>(2, 2, {}, kNaive), InvalidParameter);
}

TEST(EmpiricalXebTest, StandardErrorAbsence) {
  const auto table = worked_example_table();
  const auto one = draw_batch(table, 1, 1);
  EXPECT_FALSE(empirical_xeb(table, one, kLogspace).standard_error.has_value());
  // N p(x) = 2^1100 overflows a double.
  const auto mass = point_mass_table(1100, 2);
  const auto est = empirical_xeb(mass, draw_batch(mass, 4, 1), kLogspace);
  EXPECT_FALSE(est.standard_error.has_value());
  EXPECT_NEAR(est.log1p_value, 1100 * std::log(2.0), 1e-9);
}

TEST(EmpiricalXebTest, OverflowBoundaryAtTwoToThe1024) {
  const auto at_limit = generate_weight_table(1023, 2, 1);
  const auto naive_1023 = empirical_xeb(at_limit, draw_batch(at_limit, 1000, 2), kNaive);
  EXPECT_TRUE(std::isfinite(naive_1023.value));
  expect_consistent(naive_1023);

  const auto past = generate_weight_table(1024, 2, 1);
  const auto batch = draw_batch(past, 1000, 2);
  const auto naive_1024 = empirical_xeb(past, batch, kNaive);
  EXPECT_EQ(naive_1024.value, std::numeric_limits<double>::infinity());
  EXPECT_TRUE(std::isfinite(naive_1024.log1p_value));
  const auto logspace_1024 = empirical_xeb(past, batch, kLogspace);
  EXPECT_TRUE(std::isfinite(logspace_1024.value));
  EXPECT_EQ(naive_1024.log1p_value, logspace_1024.log1p_value);
}

TEST(EmpiricalXebTest, LogspaceSurvivesUnderflowingProbabilities) {
  // At n = 3000 every p(x) is far below the smallest double.
  const auto table = generate_weight_table(3000, 2, 4);
  const auto batch = draw_batch(table, 200, 5);
  EXPECT_EQ(std::exp(batch.log_probs[0]), 0.0);
  const auto est = empirical_xeb(table, batch, kLogspace);
  EXPECT_TRUE(std::isfinite(est.log1p_value));
  EXPECT_GT(est.log1p_value, 0.0);
}

TEST(EmpiricalXebTest, ModesAgreeWhenNaiveIsFinite) {
  SplitMix64 gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + static_cast<int>(gen() % 4);
    const int n = 1 + static_cast<int>(gen() % 600);
    const auto table = generate_weight_table(n, d, gen());
    const auto batch = draw_batch(table, 2000, gen());
    const auto naive = empirical_xeb(table, batch, kNaive);
    const auto logspace = empirical_xeb(table, batch, kLogspace);
    expect_consistent(naive);
    expect_consistent(logspace);
    if (!std::isfinite(naive.value)) continue;
    EXPECT_LE(std::abs(naive.value - logspace.value),
              1e-9 * std::max(std::abs(naive.value), std::abs(logspace.value)) + 1e-12)
        << "n=" << n << " d=" << d;
  }
}

TEST(TrueXebTest, WorkedExample) {
  const auto table = worked_example_table();
  const auto brute = true_xeb_bruteforce(table);
  const auto closed = true_xeb_closed_form(table);
  EXPECT_TRUE(near_relative(brute.value, 0.2064, 1e-12));
  EXPECT_TRUE(near_relative(closed.value, 0.2064, 1e-12));
  EXPECT_NEAR(closed.log1p_value, std::log(1.16) + std::log(1.04), 1e-15);
  expect_consistent(brute);
  expect_consistent(closed);
}

TEST(TrueXebTest, DegenerateTables) {
  for (int n : {1, 5, 10}) {
    EXPECT_NEAR(true_xeb_bruteforce(uniform_table(n, 2)).value, 0.0, 1e-12);
    EXPECT_NEAR(true_xeb_closed_form(uniform_table(n, 3)).value, 0.0, 1e-12);
  }
  EXPECT_EQ(true_xeb_bruteforce(point_mass_table(2, 2)).value, 3.0);
  EXPECT_EQ(true_xeb_closed_form(point_mass_table(2, 2)).value, 3.0);
  EXPECT_EQ(true_xeb_closed_form(point_mass_table(10, 2)).value, 1023.0);
}

TEST(TrueXebTest, BruteforceCap) {
  const auto table = generate_weight_table(27, 2, 1);
  EXPECT_THROW(true_xeb_bruteforce(table), ResourceLimit);
  EXPECT_THROW(true_xeb_bruteforce(generate_weight_table(5, 2, 1), 16), ResourceLimit);
}

TEST(TrueXebTest, ClosedFormMatchesBruteforce) {
  SplitMix64 gen(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = std::array{2, 3, 5}[trial % 3];
    int max_n = 1;
    while (max_n < 16 && outcome_count_up_to(max_n + 1, d, std::uint64_t{1} << 16) != 0) {
      ++max_n;
    }
    const int n = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(max_n));
    const auto table = generate_weight_table(n, d, gen());
    const auto brute = true_xeb_bruteforce(table);
    const auto closed = true_xeb_closed_form(table);
    EXPECT_LE(std::abs(closed.value - brute.value), 1e-9 * (1 + brute.value))
        << "n=" << n << " d=" << d;
  }
}

TEST(TrueXebTest, FactorBounds) {
  SplitMix64 gen(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(gen() % 9);
    const int n = 1 + static_cast<int>(gen() % 2000);
    const auto table = generate_weight_table(n, d, gen());
    const auto est = true_xeb_closed_form(table);
    EXPECT_GE(est.log1p_value, 0.0);
    EXPECT_LE(est.log1p_value, n * std::log(static_cast<double>(d)) * (1 + 1e-12));
    EXPECT_GE(est.value, 0.0);
    expect_consistent(est);
  }
  // Point masses sit on the upper bound, uniform rows on the lower one.
  EXPECT_NEAR(true_xeb_closed_form(point_mass_table(50, 4)).log1p_value,
              50 * std::log(4.0), 1e-12);
}

TEST(TrueXebTest, LongDoubleAgreesWithDouble) {
  const auto ld = true_xeb_closed_form(generate_weight_table<long double>(300, 3, 12));
  const auto dd = true_xeb_closed_form(generate_weight_table<double>(300, 3, 12));
  EXPECT_NEAR(static_cast<double>(ld.log1p_value), dd.log1p_value, 1e-10);
}

TEST(EmpiricalXebTest, UnbiasedAgainstClosedForm) {
  const auto table = generate_weight_table(10, 2, 606);
  const double truth = true_xeb_closed_form(table).value;
  constexpr int kBatches = 100;
  double mean = 0;
  double pooled_var = 0;
  for (int b = 0; b < kBatches; ++b) {
    const auto est = empirical_xeb(table, draw_batch(table, 10'000, 500 + b), kLogspace);
    mean += est.value / kBatches;
    pooled_var += *est.standard_error * *est.standard_error;
  }
  const double pooled_se = std::sqrt(pooled_var) / kBatches;
  EXPECT_LE(std::abs(mean - truth), 5 * pooled_se);
}

TEST(XebModeTest, NamesRoundTrip) {
  for (XebMode mode : {kNaive, kLogspace, XebMode::kTrueBruteforce, XebMode::kTrueClosedForm}) {
    EXPECT_EQ(parse_xeb_mode(to_string(mode)), mode);
  }
  EXPECT_FALSE(parse_xeb_mode("naive").has_value());
}

}  // namespace
}  // namespace xebsample

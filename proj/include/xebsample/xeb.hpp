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

#ifndef XEBSAMPLE_XEB_HPP_
#define XEBSAMPLE_XEB_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>

#include "xebsample/error.hpp"
#include "xebsample/oracle.hpp"
#include "xebsample/sampler.hpp"
#include "xebsample/weight_table.hpp"

namespace xebsample {

enum class XebMode {
  kEmpiricalNaive,
  kEmpiricalLogspace,
  kTrueBruteforce,
  kTrueClosedForm,
};

constexpr std::string_view to_string(XebMode mode) noexcept {
  switch (mode) {
    case XebMode::kEmpiricalNaive:
      return "empirical_naive";
    case XebMode::kEmpiricalLogspace:
      return "empirical_logspace";
    case XebMode::kTrueBruteforce:
      return "true_bruteforce";
    case XebMode::kTrueClosedForm:
      return "true_closedform";
  }
  return "unknown";
}

constexpr std::optional<XebMode> parse_xeb_mode(std::string_view text) noexcept {
  for (XebMode mode : {XebMode::kEmpiricalNaive, XebMode::kEmpiricalLogspace,
                       XebMode::kTrueBruteforce, XebMode::kTrueClosedForm}) {
    if (to_string(mode) == text) return mode;
  }
  return std::nullopt;
}

constexpr bool is_empirical(XebMode mode) noexcept {
  return mode == XebMode::kEmpiricalNaive ||
         mode == XebMode::kEmpiricalLogspace;
}

// One XEB value. `log1p_value` = ln(XEB + 1) stays finite after `value`
// overflows. `sample_count` and `standard_error` are set for empirical modes
// only; the error is absent when the per-sample terms N p(x_m) overflow.
// `seed` is whatever reproduces the row: the table seed for true modes, the
// sampling master seed for empirical ones.
template <typename Scalar = double>
struct BasicXebEstimate {
  int n = 0;
  int d = 0;
  std::optional<std::uint64_t> sample_count;
  XebMode mode = XebMode::kTrueClosedForm;
  Scalar value = 0;
  Scalar log1p_value = 0;
  std::optional<Scalar> standard_error;
  std::uint64_t seed = 0;
};

using XebEstimate = BasicXebEstimate<double>;

namespace detail {

// Neumaier-compensated running sum. Sequential, so the result does not
// depend on how the terms were produced.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar term) noexcept {
    const Scalar t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
  }
  Scalar value() const noexcept { return sum_ + compensation_; }

 private:
  Scalar sum_ = 0;
  Scalar compensation_ = 0;
};

}  // namespace detail

// ln sum_m exp(x_m), shifted by the maximum so that terms far below the
// double range still contribute.
template <typename Scalar>
Scalar logsumexp(std::span<const Scalar> values) {
  if (values.empty()) return -std::numeric_limits<Scalar>::infinity();
  Scalar top = -std::numeric_limits<Scalar>::infinity();
  for (Scalar v : values) top = std::max(top, v);
  if (!std::isfinite(top)) return top;
  detail::CompensatedSum<Scalar> sum;
  for (Scalar v : values) sum.add(std::exp(v - top));
  return top + std::log(sum.value());
}

namespace detail {

// Unbiased standard error of the mean of N p(x_m), evaluated with the
// largest term factored out.
template <typename Scalar>
std::optional<Scalar> xeb_standard_error(Scalar log_outcomes,
                                         std::span<const Scalar> log_probs) {
  const std::size_t count = log_probs.size();
  if (count < 2) return std::nullopt;
  Scalar top = -std::numeric_limits<Scalar>::infinity();
  for (Scalar lp : log_probs) top = std::max(top, log_outcomes + lp);
  if (!std::isfinite(top) ||
      top > std::log(std::numeric_limits<Scalar>::max())) {
    return std::nullopt;
  }
  CompensatedSum<Scalar> total;
  for (Scalar lp : log_probs) total.add(std::exp(log_outcomes + lp - top));
  const Scalar mean = total.value() / static_cast<Scalar>(count);
  CompensatedSum<Scalar> sum_sq;
  for (Scalar lp : log_probs) {
    const Scalar dev = std::exp(log_outcomes + lp - top) - mean;
    sum_sq.add(dev * dev);
  }
  const Scalar variance = sum_sq.value() / static_cast<Scalar>(count - 1);
  const Scalar error =
      std::exp(top + Scalar(0.5) * std::log(variance) -
               Scalar(0.5) * std::log(static_cast<Scalar>(count)));
  if (!std::isfinite(error)) return std::nullopt;
  return error;
}

}  // namespace detail

// Exact empirical XEB (N/M) sum_m p(x_m) - 1 from the samples'
// log-probabilities.
//
// kEmpiricalNaive materializes N = d^n in Scalar and sums p(x_m) directly,
// so for double it is +inf once d^n overflows (n >= 1024 at d = 2).
// kEmpiricalLogspace evaluates n ln d - ln M + logsumexp(log p) and stays
// finite in log1p form.
template <typename Scalar>
BasicXebEstimate<Scalar> empirical_xeb_from_log_probs(
    int n, int d, std::span<const Scalar> log_probs, XebMode mode,
    std::uint64_t seed = 0) {
  if (!is_empirical(mode)) {
    throw InvalidParameter("empirical_xeb: mode must be empirical");
  }
  if (n < 1 || d < 2) throw InvalidParameter("empirical_xeb: bad n or d");
  if (log_probs.empty()) throw InvalidParameter("empirical_xeb: M must be >= 1");

  const auto count = static_cast<Scalar>(log_probs.size());
  const Scalar log_outcomes = static_cast<Scalar>(n) * std::log(static_cast<Scalar>(d));
  const Scalar log1p_logspace =
      log_outcomes - std::log(count) + logsumexp(log_probs);

  BasicXebEstimate<Scalar> est;
  est.n = n;
  est.d = d;
  est.sample_count = log_probs.size();
  est.mode = mode;
  est.seed = seed;
  if (mode == XebMode::kEmpiricalNaive) {
    const Scalar outcomes = std::pow(static_cast<Scalar>(d), n);
    detail::CompensatedSum<Scalar> sum;
    for (Scalar lp : log_probs) sum.add(std::exp(lp));
    est.value = outcomes * (sum.value() / count) - Scalar(1);
    est.log1p_value = std::isfinite(est.value) ? std::log1p(est.value)
                                               : log1p_logspace;
  } else {
    est.log1p_value = log1p_logspace;
    est.value = std::expm1(log1p_logspace);
  }
  est.standard_error = detail::xeb_standard_error(log_outcomes, log_probs);
  return est;
}

template <typename Scalar>
BasicXebEstimate<Scalar> empirical_xeb(const BasicWeightTable<Scalar>& table,
                                       const BasicSampleBatch<Scalar>& batch,
                                       XebMode mode) {
  if (batch.n != table.n() || batch.d != table.d()) {
    throw InvalidParameter("empirical_xeb: batch does not match table (n, d)");
  }
  return empirical_xeb_from_log_probs<Scalar>(
      table.n(), table.d(), std::span<const Scalar>(batch.log_probs), mode,
      batch.master_seed);
}

// N sum_x p(x)^2 - 1 over a dense pmf.
template <typename Scalar>
BasicXebEstimate<Scalar> true_xeb_from_pmf(const BasicDensePmf<Scalar>& pmf) {
  const auto outcomes = static_cast<Scalar>(pmf.probs.size());
  const Scalar scaled = outcomes * pmf.probs.squaredNorm();
  BasicXebEstimate<Scalar> est;
  est.n = pmf.n;
  est.d = pmf.d;
  est.mode = XebMode::kTrueBruteforce;
  est.value = scaled - Scalar(1);
  est.log1p_value = std::log(scaled);
  return est;
}

template <typename Scalar>
BasicXebEstimate<Scalar> true_xeb_bruteforce(
    const BasicWeightTable<Scalar>& table,
    std::uint64_t cap = kDefaultEnumerationCap) {
  auto est = true_xeb_from_pmf(enumerate_pmf(table, cap));
  est.seed = table.seed();
  return est;
}

// True XEB in O(nd). In carry space p is a product distribution, so
// sum_x p(x)^2 = prod_i sum_j w_i(j)^2 and
//
//   XEB + 1 = prod_i d sum_j w_i(j)^2.
//
// Every factor lies in [1, d]. The value is the linear product minus one
// while that product is finite, otherwise expm1 of the summed logs.
template <typename Scalar>
BasicXebEstimate<Scalar> true_xeb_closed_form(
    const BasicWeightTable<Scalar>& table) {
  const ProbabilityVector<Scalar> factors =
      static_cast<Scalar>(table.d()) * table.weights().rowwise().squaredNorm();
  BasicXebEstimate<Scalar> est;
  est.n = table.n();
  est.d = table.d();
  est.mode = XebMode::kTrueClosedForm;
  est.seed = table.seed();
  est.log1p_value = 0;
  for (Eigen::Index i = 0; i < factors.size(); ++i) {
    est.log1p_value += std::log(factors(i));
  }
  const Scalar product = factors.prod();
  est.value = std::isfinite(product) ? product - Scalar(1)
                                     : std::expm1(est.log1p_value);
  return est;
}

}  // namespace xebsample

#endif  // XEBSAMPLE_XEB_HPP_

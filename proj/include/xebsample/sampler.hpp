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

#ifndef XEBSAMPLE_SAMPLER_HPP_
#define XEBSAMPLE_SAMPLER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "xebsample/detail/parallel.hpp"
#include "xebsample/digits.hpp"
#include "xebsample/error.hpp"
#include "xebsample/random.hpp"
#include "xebsample/weight_table.hpp"

namespace xebsample {

// M outcomes with their natural-log probabilities. Sample m carries the
// global stream index first_index + m; digits are stored flat, n per sample.
template <typename Scalar = double>
struct BasicSampleBatch {
  int n = 0;
  int d = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t first_index = 0;
  std::vector<Digit> digits;
  std::vector<Scalar> log_probs;

  std::size_t size() const noexcept { return log_probs.size(); }

  std::span<const Digit> sample(std::size_t m) const {
    const auto width = static_cast<std::size_t>(n);
    return std::span<const Digit>(digits).subspan(m * width, width);
  }

  DigitString sample_string(std::size_t m) const {
    const auto s = sample(m);
    return DigitString(std::vector<Digit>(s.begin(), s.end()), d);
  }

  std::uint64_t sample_index(std::size_t m) const noexcept {
    return first_index + m;
  }

  friend bool operator==(const BasicSampleBatch&,
                         const BasicSampleBatch&) = default;
};

using SampleBatch = BasicSampleBatch<double>;

// Precomputed per-table state for sampling and log-probability evaluation.
//
// Sampling works in carry space: because s -> c (prefix sums mod d) is a
// bijection under which p factorizes, each c_i is drawn independently from
// row i by inverse CDF, then s_0 = c_0 and s_i = (c_i - c_{i-1}) mod d.
template <typename Scalar = double>
class BasicSampler {
 public:
  explicit BasicSampler(const BasicWeightTable<Scalar>& table)
      : n_(table.n()),
        d_(table.d()),
        cumulative_(table.n(), table.d()),
        log_weights_(table.n(), table.d()),
        last_positive_(static_cast<std::size_t>(table.n()), 0) {
    for (int i = 0; i < n_; ++i) {
      Scalar running = 0;
      for (int j = 0; j < d_; ++j) {
        running += table(i, j);
        cumulative_(i, j) = running;
        log_weights_(i, j) = std::log(table(i, j));
        if (table(i, j) > Scalar(0)) last_positive_[static_cast<std::size_t>(i)] = j;
      }
    }
  }

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }

  // Writes sample `sample_index` of the stream seeded by `master_seed` into
  // `out` (length n) and returns its log-probability.
  Scalar draw_into(std::uint64_t sample_index, std::uint64_t master_seed,
                   std::span<Digit> out) const {
    SplitMix64 gen(mix_seed(master_seed, sample_index));
    int previous = 0;
    Scalar log_p = 0;
    for (int i = 0; i < n_; ++i) {
      const int carry = select_carry(i, uniform_closed_open(gen()));
      const int digit = carry - previous;
      out[static_cast<std::size_t>(i)] =
          static_cast<Digit>(digit + (d_ & -static_cast<int>(digit < 0)));
      log_p += log_weights_(i, carry);
      previous = carry;
    }
    return log_p;
  }

  Scalar log_prob(std::span<const Digit> digits) const {
    if (static_cast<int>(digits.size()) != n_) {
      throw InvalidParameter("log_prob: digit count does not match table");
    }
    int carry = 0;
    Scalar log_p = 0;
    for (int i = 0; i < n_; ++i) {
      carry = (carry + static_cast<int>(digits[static_cast<std::size_t>(i)])) % d_;
      log_p += log_weights_(i, carry);
    }
    return log_p;
  }

 private:
  // First index whose cumulative sum exceeds u. When rounding leaves the
  // final cumulative sum at or below u, the last positive-weight index wins.
  int select_carry(int i, double u) const {
    const Scalar* first = cumulative_.data() + static_cast<std::ptrdiff_t>(i) * d_;
    const auto value = static_cast<Scalar>(u);
    if (d_ == 2) {
      // Branch-free on the random comparison; the fallback is rare.
      if (value >= first[1]) [[unlikely]] {
        return last_positive_[static_cast<std::size_t>(i)];
      }
      return static_cast<int>(value >= first[0]);
    }
    const Scalar* last = first + d_;
    const Scalar* it = std::upper_bound(first, last, value);
    return it == last ? last_positive_[static_cast<std::size_t>(i)]
                      : static_cast<int>(it - first);
  }

  int n_;
  int d_;
  RowMatrix<Scalar> cumulative_;
  RowMatrix<Scalar> log_weights_;
  std::vector<int> last_positive_;
};

using Sampler = BasicSampler<double>;

// sum_i ln w_i(c_i). A zero weight on the path gives -infinity.
template <typename Scalar>
Scalar log_prob(const BasicWeightTable<Scalar>& table,
                std::span<const Digit> digits) {
  if (static_cast<int>(digits.size()) != table.n()) {
    throw InvalidParameter("log_prob: digit count does not match table");
  }
  const int d = table.d();
  int carry = 0;
  Scalar log_p = 0;
  for (int i = 0; i < table.n(); ++i) {
    const Digit s = digits[static_cast<std::size_t>(i)];
    if (s >= static_cast<Digit>(d)) {
      throw InvalidParameter("log_prob: digit out of range");
    }
    carry = (carry + static_cast<int>(s)) % d;
    log_p += std::log(table(i, carry));
  }
  return log_p;
}

template <typename Scalar>
Scalar log_prob(const BasicWeightTable<Scalar>& table, const DigitString& s) {
  if (s.d() != table.d()) {
    throw InvalidParameter("log_prob: digit base does not match table");
  }
  return log_prob(table, s.digits());
}

template <typename Scalar>
DigitString draw_sample(const BasicWeightTable<Scalar>& table,
                        std::uint64_t sample_index, std::uint64_t master_seed) {
  const BasicSampler<Scalar> sampler(table);
  std::vector<Digit> digits(static_cast<std::size_t>(table.n()));
  sampler.draw_into(sample_index, master_seed, digits);
  return DigitString(std::move(digits), table.d());
}

// Samples first_index, ..., first_index + count - 1 of the stream. Output is
// identical for every worker count.
template <typename Scalar>
BasicSampleBatch<Scalar> draw_batch_range(const BasicWeightTable<Scalar>& table,
                                          std::uint64_t first_index,
                                          std::uint64_t count,
                                          std::uint64_t master_seed,
                                          unsigned workers = default_workers()) {
  if (count == 0) throw InvalidParameter("draw_batch: M must be >= 1");
  const BasicSampler<Scalar> sampler(table);
  const auto width = static_cast<std::size_t>(table.n());
  BasicSampleBatch<Scalar> batch;
  batch.n = table.n();
  batch.d = table.d();
  batch.master_seed = master_seed;
  batch.first_index = first_index;
  batch.digits.resize(count * width);
  batch.log_probs.resize(count);
  detail::parallel_for(count, workers, [&](std::size_t begin, std::size_t end) {
    std::span<Digit> all(batch.digits);
    for (std::size_t m = begin; m < end; ++m) {
      batch.log_probs[m] = sampler.draw_into(first_index + m, master_seed,
                                             all.subspan(m * width, width));
    }
  });
  return batch;
}

template <typename Scalar>
BasicSampleBatch<Scalar> draw_batch(const BasicWeightTable<Scalar>& table,
                                    std::uint64_t count,
                                    std::uint64_t master_seed,
                                    unsigned workers = default_workers()) {
  return draw_batch_range(table, 0, count, master_seed, workers);
}

// The log_probs of draw_batch(table, count, master_seed) without storing the
// digits; memory is O(count) instead of O(count * n).
template <typename Scalar>
std::vector<Scalar> draw_log_probs(const BasicWeightTable<Scalar>& table,
                                   std::uint64_t count,
                                   std::uint64_t master_seed,
                                   unsigned workers = default_workers()) {
  if (count == 0) throw InvalidParameter("draw_batch: M must be >= 1");
  const BasicSampler<Scalar> sampler(table);
  std::vector<Scalar> log_probs(count);
  detail::parallel_for(count, workers, [&](std::size_t begin, std::size_t end) {
    std::vector<Digit> scratch(static_cast<std::size_t>(table.n()));
    for (std::size_t m = begin; m < end; ++m) {
      log_probs[m] = sampler.draw_into(m, master_seed, scratch);
    }
  });
  return log_probs;
}

// A batch holding the given outcomes, with log-probabilities from `table`.
template <typename Scalar>
BasicSampleBatch<Scalar> batch_from_samples(
    const BasicWeightTable<Scalar>& table, std::span<const DigitString> samples,
    std::uint64_t master_seed = 0) {
  if (samples.empty()) throw InvalidParameter("batch needs M >= 1 samples");
  BasicSampleBatch<Scalar> batch;
  batch.n = table.n();
  batch.d = table.d();
  batch.master_seed = master_seed;
  batch.digits.reserve(samples.size() * static_cast<std::size_t>(table.n()));
  batch.log_probs.reserve(samples.size());
  for (const auto& s : samples) {
    batch.log_probs.push_back(log_prob(table, s));
    batch.digits.insert(batch.digits.end(), s.digits().begin(),
                        s.digits().end());
  }
  return batch;
}

}  // namespace xebsample

#endif  // XEBSAMPLE_SAMPLER_HPP_

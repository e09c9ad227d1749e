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

#ifndef XEBSAMPLE_ORACLE_HPP_
#define XEBSAMPLE_ORACLE_HPP_

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "xebsample/digits.hpp"
#include "xebsample/error.hpp"
#include "xebsample/sampler.hpp"
#include "xebsample/weight_table.hpp"

namespace xebsample {

// Default bound on d^n for dense materialization (512 MiB of doubles).
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 26;
// Largest cap accepted at all (8 GiB of doubles); needs an explicit opt-in
// at the command line.
inline constexpr std::uint64_t kMaxEnumerationCap = std::uint64_t{1} << 30;

// Throws InvalidParameter for caps above kMaxEnumerationCap and
// ResourceLimit when d^n > cap. Returns d^n.
inline std::uint64_t checked_outcome_count(int n, int d, std::uint64_t cap) {
  if (cap == 0 || cap > kMaxEnumerationCap) {
    throw InvalidParameter("enumeration cap must be in [1, 2^30]");
  }
  const std::uint64_t count = outcome_count_up_to(n, d, cap);
  if (count == 0) {
    throw ResourceLimit("d^n for n = " + std::to_string(n) + ", d = " +
                            std::to_string(d) +
                            " exceeds the enumeration cap of " +
                            std::to_string(cap) + " entries",
                        cap);
  }
  return count;
}

// A complete pmf over the d^n outcomes, indexed by x = sum_i s_i d^i.
template <typename Scalar = double>
struct BasicDensePmf {
  int n = 0;
  int d = 0;
  ProbabilityVector<Scalar> probs;
};

using DensePmf = BasicDensePmf<double>;

namespace detail {

// Depth-first over digits s_0, ..., s_{n-1} carrying the prefix product, so
// each internal node costs one multiply: O(d^n) total work.
template <typename Scalar>
void fill_pmf(const BasicWeightTable<Scalar>& table, int i, int carry,
              Scalar prefix, std::uint64_t x, std::uint64_t stride,
              Scalar* probs) {
  const int d = table.d();
  if (i == table.n() - 1) {
    for (int s = 0; s < d; ++s) {
      const int c = (carry + s) % d;
      probs[x + static_cast<std::uint64_t>(s) * stride] = prefix * table(i, c);
    }
    return;
  }
  for (int s = 0; s < d; ++s) {
    const int c = (carry + s) % d;
    fill_pmf(table, i + 1, c, prefix * table(i, c),
             x + static_cast<std::uint64_t>(s) * stride,
             stride * static_cast<std::uint64_t>(d), probs);
  }
}

}  // namespace detail

template <typename Scalar>
BasicDensePmf<Scalar> enumerate_pmf(const BasicWeightTable<Scalar>& table,
                                    std::uint64_t cap = kDefaultEnumerationCap) {
  const std::uint64_t count = checked_outcome_count(table.n(), table.d(), cap);
  BasicDensePmf<Scalar> pmf{table.n(), table.d(),
                            ProbabilityVector<Scalar>(static_cast<Eigen::Index>(count))};
  detail::fill_pmf(table, 0, 0, Scalar(1), 0, 1, pmf.probs.data());
  return pmf;
}

// Relative frequency of each outcome in the batch.
template <typename Scalar>
BasicDensePmf<Scalar> empirical_histogram(const BasicSampleBatch<Scalar>& batch,
                                          std::uint64_t cap = kDefaultEnumerationCap) {
  if (batch.size() == 0) throw InvalidParameter("histogram of an empty batch");
  const std::uint64_t count = checked_outcome_count(batch.n, batch.d, cap);
  BasicDensePmf<Scalar> pmf{batch.n, batch.d,
                            ProbabilityVector<Scalar>::Zero(static_cast<Eigen::Index>(count))};
  for (std::size_t m = 0; m < batch.size(); ++m) {
    pmf.probs(static_cast<Eigen::Index>(digits_to_index_u64(batch.sample(m), batch.d))) += 1;
  }
  pmf.probs /= static_cast<Scalar>(batch.size());
  return pmf;
}

template <typename Scalar>
Scalar total_variation(const BasicDensePmf<Scalar>& a,
                       const BasicDensePmf<Scalar>& b) {
  if (a.n != b.n || a.d != b.d || a.probs.size() != b.probs.size()) {
    throw InvalidParameter("total_variation: pmf dimensions differ");
  }
  return Scalar(0.5) * (a.probs - b.probs).cwiseAbs().sum();
}

}  // namespace xebsample

#endif  // XEBSAMPLE_ORACLE_HPP_

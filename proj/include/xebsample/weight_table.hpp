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

#ifndef XEBSAMPLE_WEIGHT_TABLE_HPP_
#define XEBSAMPLE_WEIGHT_TABLE_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "xebsample/error.hpp"
#include "xebsample/random.hpp"

namespace xebsample {

template <typename Scalar>
using RowMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using ProbabilityVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Rows of a weight table must sum to one within this absolute tolerance.
inline constexpr double kRowSumTolerance = 1e-12;

// The n x d parameter matrix of the product-form distribution. Row i is the
// pmf w_i over carry values; the probability of a digit string s is
//
//   p(s) = prod_i w_i(c_i),   c_i = (s_0 + ... + s_i) mod d.
//
// Immutable after construction. Zero entries are accepted (loaded tables and
// degenerate fixtures), negative or non-finite entries are not.
template <typename Scalar = double>
class BasicWeightTable {
 public:
  using Matrix = RowMatrix<Scalar>;

  explicit BasicWeightTable(Matrix weights, std::uint64_t seed = 0)
      : weights_(std::move(weights)), seed_(seed) {
    if (weights_.rows() < 1) {
      throw InvalidParameter("weight table needs n >= 1 rows");
    }
    if (weights_.cols() < 2) {
      throw InvalidParameter("weight table needs d >= 2 columns");
    }
    for (Eigen::Index i = 0; i < weights_.rows(); ++i) {
      for (Eigen::Index j = 0; j < weights_.cols(); ++j) {
        const Scalar w = weights_(i, j);
        if (!std::isfinite(w) || w < Scalar(0) || w > Scalar(1)) {
          throw InvalidParameter("weight table entry (" + std::to_string(i) +
                                 ", " + std::to_string(j) +
                                 ") is not a probability");
        }
      }
      const Scalar sum = weights_.row(i).sum();
      if (std::abs(sum - Scalar(1)) > Scalar(kRowSumTolerance)) {
        throw InvalidParameter("weight table row " + std::to_string(i) +
                               " does not sum to 1");
      }
    }
  }

  int n() const noexcept { return static_cast<int>(weights_.rows()); }
  int d() const noexcept { return static_cast<int>(weights_.cols()); }
  std::uint64_t seed() const noexcept { return seed_; }

  const Matrix& weights() const noexcept { return weights_; }
  auto row(int i) const { return weights_.row(i); }
  Scalar operator()(int i, int j) const { return weights_(i, j); }

  friend bool operator==(const BasicWeightTable& a, const BasicWeightTable& b) {
    return a.seed_ == b.seed_ && a.weights_.rows() == b.weights_.rows() &&
           a.weights_.cols() == b.weights_.cols() && a.weights_ == b.weights_;
  }

 private:
  Matrix weights_;
  std::uint64_t seed_;
};

using WeightTable = BasicWeightTable<double>;

// Scales a non-negative vector to sum to one.
template <typename Derived>
ProbabilityVector<typename Derived::Scalar> normalize_pmf(
    const Eigen::MatrixBase<Derived>& raw) {
  using Scalar = typename Derived::Scalar;
  if (raw.size() < 2) {
    throw InvalidParameter("normalize_pmf needs at least two entries");
  }
  for (Eigen::Index j = 0; j < raw.size(); ++j) {
    const Scalar v = raw(j);
    if (!std::isfinite(v) || v < Scalar(0)) {
      throw InvalidParameter("normalize_pmf entries must be finite and >= 0");
    }
  }
  const Scalar sum = raw.sum();
  if (!(sum > Scalar(0))) {
    throw InvalidParameter("normalize_pmf input sums to zero");
  }
  ProbabilityVector<Scalar> out = raw.reshaped() / sum;
  return out;
}

// Draws each w_i(j) uniformly from (0, 1) with SplitMix64(seed), row by row,
// then normalizes every row.
template <typename Scalar = double>
BasicWeightTable<Scalar> generate_weight_table(int n, int d,
                                               std::uint64_t seed) {
  if (n < 1) throw InvalidParameter("generate_weight_table: n must be >= 1");
  if (d < 2) throw InvalidParameter("generate_weight_table: d must be >= 2");
  SplitMix64 gen(seed);
  RowMatrix<Scalar> weights(n, d);
  ProbabilityVector<Scalar> raw(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      raw(j) = static_cast<Scalar>(uniform_open(gen()));
    }
    weights.row(i) = normalize_pmf(raw).transpose();
  }
  return BasicWeightTable<Scalar>(std::move(weights), seed);
}

// The pmf of digit s_i given the carry t = s_0 + ... + s_{i-1} (mod d):
// entry s is w_i((t + s) mod d).
template <typename Scalar>
ProbabilityVector<Scalar> conditional_pmf(const BasicWeightTable<Scalar>& table,
                                          int i, int carry) {
  if (i < 0 || i >= table.n()) {
    throw InvalidParameter("conditional_pmf: row index out of range");
  }
  const int d = table.d();
  if (carry < 0 || carry >= d) {
    throw InvalidParameter("conditional_pmf: carry out of range");
  }
  ProbabilityVector<Scalar> out(d);
  for (int s = 0; s < d; ++s) out(s) = table(i, (carry + s) % d);
  return out;
}

}  // namespace xebsample

#endif  // XEBSAMPLE_WEIGHT_TABLE_HPP_

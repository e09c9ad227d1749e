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

#ifndef XEBSAMPLE_DIGITS_HPP_
#define XEBSAMPLE_DIGITS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace xebsample {

using Digit = std::uint32_t;

// Exact outcome index; d^n overflows 64 bits long before n = 1023.
using BigIndex = boost::multiprecision::cpp_int;

// An outcome as n base-d digits. Digit s_0 is the least significant:
// x = sum_i s_i d^i.
class DigitString {
 public:
  DigitString(std::vector<Digit> digits, int d);

  static DigitString zeros(int n, int d);

  int n() const noexcept { return static_cast<int>(digits_.size()); }
  int d() const noexcept { return d_; }
  std::span<const Digit> digits() const noexcept { return digits_; }
  Digit operator[](int i) const { return digits_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const DigitString&, const DigitString&) = default;

 private:
  std::vector<Digit> digits_;
  int d_;
};

BigIndex digits_to_index(const DigitString& s);

// Throws OutOfRange unless 0 <= x < d^n.
DigitString index_to_digits(const BigIndex& x, int n, int d);

// True when d^n <= 2^63, i.e. every index fits a signed 64-bit integer.
bool index_fits_u63(int n, int d) noexcept;

// d^n when it is at most `limit`, otherwise 0.
std::uint64_t outcome_count_up_to(int n, int d, std::uint64_t limit) noexcept;

// Fast path for small outcome spaces; the caller guarantees the index fits.
std::uint64_t digits_to_index_u64(std::span<const Digit> digits, int d) noexcept;

// Digits s_0 s_1 ... s_{n-1}, least significant first. Characters 0-9a-z for
// d <= 36, otherwise decimal digits joined by ':'.
std::string to_digit_text(std::span<const Digit> digits, int d);
DigitString parse_digit_text(std::string_view text, int n, int d);

}  // namespace xebsample

#endif  // XEBSAMPLE_DIGITS_HPP_

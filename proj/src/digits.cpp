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

#include "xebsample/digits.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

#include "xebsample/error.hpp"

namespace xebsample {

namespace {

constexpr std::string_view kDigitChars = "0123456789abcdefghijklmnopqrstuvwxyz";

void check_shape(int n, int d) {
  if (n < 1) throw InvalidParameter("digit string needs n >= 1");
  if (d < 2) throw InvalidParameter("digit string needs d >= 2");
}

}  // namespace

DigitString::DigitString(std::vector<Digit> digits, int d)
    : digits_(std::move(digits)), d_(d) {
  check_shape(static_cast<int>(digits_.size()), d);
  for (Digit s : digits_) {
    if (s >= static_cast<Digit>(d)) {
      throw InvalidParameter("digit " + std::to_string(s) +
                             " out of range for d = " + std::to_string(d));
    }
  }
}

DigitString DigitString::zeros(int n, int d) {
  check_shape(n, d);
  return DigitString(std::vector<Digit>(static_cast<std::size_t>(n), 0), d);
}

BigIndex digits_to_index(const DigitString& s) {
  BigIndex x = 0;
  const auto digits = s.digits();
  // Horner from the most significant digit s_{n-1} down to s_0.
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    x *= s.d();
    x += *it;
  }
  return x;
}

DigitString index_to_digits(const BigIndex& x, int n, int d) {
  check_shape(n, d);
  if (x < 0) throw OutOfRange("index must be non-negative");
  std::vector<Digit> digits(static_cast<std::size_t>(n));
  BigIndex rest = x;
  const BigIndex base = d;
  for (auto& s : digits) {
    BigIndex q, r;
    boost::multiprecision::divide_qr(rest, base, q, r);
    s = r.convert_to<Digit>();
    rest = std::move(q);
  }
  if (rest != 0) {
    throw OutOfRange("index " + x.str() + " >= d^n for n = " +
                     std::to_string(n) + ", d = " + std::to_string(d));
  }
  return DigitString(std::move(digits), d);
}

std::uint64_t outcome_count_up_to(int n, int d, std::uint64_t limit) noexcept {
  if (n < 1 || d < 2) return 0;
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > limit / static_cast<std::uint64_t>(d)) return 0;
    count *= static_cast<std::uint64_t>(d);
  }
  return count;
}

bool index_fits_u63(int n, int d) noexcept {
  return outcome_count_up_to(n, d, std::uint64_t{1} << 63) != 0;
}

std::uint64_t digits_to_index_u64(std::span<const Digit> digits,
                                  int d) noexcept {
  std::uint64_t x = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    x = x * static_cast<std::uint64_t>(d) + *it;
  }
  return x;
}

std::string to_digit_text(std::span<const Digit> digits, int d) {
  std::string out;
  if (d <= static_cast<int>(kDigitChars.size())) {
    out.reserve(digits.size());
    for (Digit s : digits) out.push_back(kDigitChars[s]);
    return out;
  }
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0) out.push_back(':');
    out += std::to_string(digits[i]);
  }
  return out;
}

DigitString parse_digit_text(std::string_view text, int n, int d) {
  check_shape(n, d);
  std::vector<Digit> digits;
  digits.reserve(static_cast<std::size_t>(n));
  if (d <= static_cast<int>(kDigitChars.size())) {
    for (char ch : text) {
      const auto pos = kDigitChars.find(ch);
      if (pos == std::string_view::npos) {
        throw InvalidParameter("bad digit character in '" + std::string(text) +
                               "'");
      }
      digits.push_back(static_cast<Digit>(pos));
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = std::min(text.find(':', start), text.size());
      Digit value = 0;
      const auto* first = text.data() + start;
      const auto* last = text.data() + end;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || first == last) {
        throw InvalidParameter("bad digit field in '" + std::string(text) +
                               "'");
      }
      digits.push_back(value);
      start = end + 1;
    }
  }
  if (static_cast<int>(digits.size()) != n) {
    throw InvalidParameter("expected " + std::to_string(n) + " digits, got " +
                           std::to_string(digits.size()));
  }
  return DigitString(std::move(digits), d);
}

}  // namespace xebsample

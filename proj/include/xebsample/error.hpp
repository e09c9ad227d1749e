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

#ifndef XEBSAMPLE_ERROR_HPP_
#define XEBSAMPLE_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xebsample {

// A parameter or argument violates an operation's precondition.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An integer index lies outside the outcome space [0, d^n).
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A dense materialization would exceed the configured enumeration cap.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& what, std::uint64_t cap)
      : std::runtime_error(what), cap_(cap) {}

  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t cap_;
};

// Reading or writing an artifact file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xebsample

#endif  // XEBSAMPLE_ERROR_HPP_

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

#ifndef XEBSAMPLE_DETAIL_PARALLEL_HPP_
#define XEBSAMPLE_DETAIL_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace xebsample {

inline unsigned default_workers() noexcept {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {

// Splits [0, count) into at most `workers` contiguous chunks and calls
// fn(begin, end) for each, one thread per chunk. Chunks are disjoint, so any
// fn writing only to its own slice yields schedule-independent output. The
// first exception thrown by a chunk is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  const std::size_t chunks =
      std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (chunks == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> threads;
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = count * c / chunks;
      const std::size_t end = count * (c + 1) / chunks;
      threads.emplace_back([&fn, &errors, c, begin, end] {
        try {
          fn(begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

}  // namespace detail
}  // namespace xebsample

#endif  // XEBSAMPLE_DETAIL_PARALLEL_HPP_

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

#ifndef XEBSAMPLE_CLI_HPP_
#define XEBSAMPLE_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xebsample {

// Relative --out paths are resolved against this directory when it is set.
inline constexpr const char* kOutputDirEnv = "XEBSAMPLE_OUTPUT_DIR";

// Stream index separating a sweep point's sampling seed from its table seed.
inline constexpr std::uint64_t kSampleStream = 0x73616d706c65ULL;

// Comma-separated items, each `n`, `a..b` or `a..b:step`, e.g.
// "100..1000:10,1023". Values keep their listed order.
std::vector<int> parse_n_list(std::string_view text);

// Runs one command. `args` excludes the program name. Returns the process
// exit status. Help goes to `out`; diagnostics and the per-task log go to
// `err`.
int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace xebsample

#endif  // XEBSAMPLE_CLI_HPP_

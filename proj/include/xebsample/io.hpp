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

#ifndef XEBSAMPLE_IO_HPP_
#define XEBSAMPLE_IO_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xebsample/bench.hpp"
#include "xebsample/oracle.hpp"
#include "xebsample/sampler.hpp"
#include "xebsample/weight_table.hpp"
#include "xebsample/xeb.hpp"

namespace xebsample {

inline constexpr int kWeightTableFormatVersion = 1;
inline constexpr std::string_view kBatchCsvHeader =
    "sample_index,x_or_digits,log_prob";
inline constexpr std::string_view kXebCsvHeader =
    "n,d,M,mode,value,log1p_value,stderr,seed";
inline constexpr std::string_view kPmfCsvHeader = "x,p";
inline constexpr std::string_view kTimingCsvHeader =
    "task,n,d,M,wall_seconds,per_item_seconds";

enum class ReportFormat { kCsv, kJson };

// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double value);
double parse_real(std::string_view text);

// {format_version: 1, n, d, seed, rows: [[w_0(0), ...], ...]}
std::string render_weight_table_json(const WeightTable& table);
WeightTable parse_weight_table_json(std::string_view text);
void save_weight_table(const WeightTable& table,
                       const std::filesystem::path& path);
WeightTable load_weight_table(const std::filesystem::path& path);

// Outcomes whose index fits 63 bits are written as decimal x; larger ones as
// digit text, least significant digit first (see to_digit_text).
std::string render_batch_csv(const SampleBatch& batch);
// Sample indices must be consecutive; log_prob values are taken from the file.
SampleBatch parse_batch_csv(std::string_view text, int n, int d);
SampleBatch load_batch_csv(const std::filesystem::path& path, int n, int d);

std::string render_xeb_csv(std::span<const XebEstimate> rows);
std::string render_xeb_json(std::span<const XebEstimate> rows);
std::vector<XebEstimate> parse_xeb_csv(std::string_view text);

std::string render_pmf_csv(const DensePmf& pmf);

std::string render_timing_csv(std::span<const TimingRecord> rows);
std::string render_timing_json(std::span<const TimingRecord> rows);

// Extrapolation inputs echoed into the bench report's advantage block.
struct AdvantageInputs {
  double ref_seconds = 0;
  int n_ref = 0;
  int n_target = 0;
  int d = 0;
};

// The sampling record at top level, then "enumeration" (when measured) and
// "advantage" blocks.
std::string render_bench_json(const TimingRecord& sampling,
                              const std::optional<TimingRecord>& enumeration,
                              const AdvantageInputs& inputs,
                              const AdvantageReport& advantage);

// Writes the report in one step; no file is left behind on failure.
void emit_report(std::span<const XebEstimate> rows, ReportFormat format,
                 const std::filesystem::path& path);
void emit_report(std::span<const TimingRecord> rows, ReportFormat format,
                 const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_atomically(const std::filesystem::path& path,
                           std::string_view content);

// Stages several output files next to their destinations and renames them
// into place on commit(). Files staged but not committed are removed.
class OutputTransaction {
 public:
  OutputTransaction() = default;
  OutputTransaction(const OutputTransaction&) = delete;
  OutputTransaction& operator=(const OutputTransaction&) = delete;
  ~OutputTransaction();

  void stage(const std::filesystem::path& path, std::string_view content);
  void commit();

 private:
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged_;
  bool committed_ = false;
};

}  // namespace xebsample

#endif  // XEBSAMPLE_IO_HPP_

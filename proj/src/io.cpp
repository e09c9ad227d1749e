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

#include "xebsample/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>

#include "xebsample/digits.hpp"
#include "xebsample/error.hpp"

namespace xebsample {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(sep, start);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

// Lines without their terminators; a trailing empty line is dropped.
std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

template <typename Int>
Int parse_int(std::string_view text, std::string_view what) {
  Int value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InvalidParameter(fmt::format("bad {} '{}'", what, text));
  }
  return value;
}

// JSON has no infinity; non-finite reals become strings.
Json real_to_json(double value) {
  if (std::isfinite(value)) return value;
  return format_real(value);
}

Json timing_to_json(const TimingRecord& r) {
  Json j;
  j["task"] = std::string(to_string(r.task));
  j["n"] = r.n;
  j["d"] = r.d;
  j["M"] = r.items;
  j["wall_seconds"] = r.wall_seconds;
  j["per_item_seconds"] = r.per_item_seconds;
  return j;
}

}  // namespace

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

double parse_real(std::string_view text) {
  if (text == "inf" || text == "+inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InvalidParameter(fmt::format("bad real '{}'", text));
  }
  return value;
}

std::string render_weight_table_json(const WeightTable& table) {
  Json j;
  j["format_version"] = kWeightTableFormatVersion;
  j["n"] = table.n();
  j["d"] = table.d();
  j["seed"] = table.seed();
  Json rows = Json::array();
  for (int i = 0; i < table.n(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < table.d(); ++k) row.push_back(table(i, k));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump() + "\n";
}

WeightTable parse_weight_table_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidParameter(fmt::format("weight table is not JSON: {}", e.what()));
  }
  try {
    if (j.at("format_version").get<int>() != kWeightTableFormatVersion) {
      throw InvalidParameter("unsupported weight table format_version");
    }
    const int n = j.at("n").get<int>();
    const int d = j.at("d").get<int>();
    const auto seed = j.at("seed").get<std::uint64_t>();
    const auto& rows = j.at("rows");
    if (n < 1 || d < 2 || !rows.is_array() ||
        rows.size() != static_cast<std::size_t>(n)) {
      throw InvalidParameter("weight table rows do not match n");
    }
    WeightTable::Matrix weights(n, d);
    for (int i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
        throw InvalidParameter(
            fmt::format("weight table row {} does not have d entries", i));
      }
      for (int k = 0; k < d; ++k) {
        weights(i, k) = row[static_cast<std::size_t>(k)].get<double>();
      }
    }
    return WeightTable(std::move(weights), seed);
  } catch (const Json::exception& e) {
    throw InvalidParameter(fmt::format("malformed weight table: {}", e.what()));
  }
}

void save_weight_table(const WeightTable& table,
                       const std::filesystem::path& path) {
  write_text_atomically(path, render_weight_table_json(table));
}

WeightTable load_weight_table(const std::filesystem::path& path) {
  return parse_weight_table_json(read_text_file(path));
}

std::string render_batch_csv(const SampleBatch& batch) {
  const bool decimal = index_fits_u63(batch.n, batch.d);
  std::string out(kBatchCsvHeader);
  out.push_back('\n');
  for (std::size_t m = 0; m < batch.size(); ++m) {
    const auto digits = batch.sample(m);
    out += std::to_string(batch.sample_index(m));
    out.push_back(',');
    out += decimal ? std::to_string(digits_to_index_u64(digits, batch.d))
                   : to_digit_text(digits, batch.d);
    out.push_back(',');
    out += format_real(batch.log_probs[m]);
    out.push_back('\n');
  }
  return out;
}

SampleBatch parse_batch_csv(std::string_view text, int n, int d) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kBatchCsvHeader) {
    throw InvalidParameter("batch CSV header mismatch");
  }
  if (lines.size() < 2) throw InvalidParameter("batch CSV has no samples");
  const bool decimal = index_fits_u63(n, d);
  SampleBatch batch;
  batch.n = n;
  batch.d = d;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const auto fields = split(lines[row], ',');
    if (fields.size() != 3) {
      throw InvalidParameter(fmt::format("batch CSV line {} needs 3 fields", row + 1));
    }
    const auto index = parse_int<std::uint64_t>(fields[0], "sample_index");
    if (row == 1) {
      batch.first_index = index;
    } else if (index != batch.first_index + (row - 1)) {
      throw InvalidParameter("batch CSV sample indices are not consecutive");
    }
    const DigitString s =
        decimal ? index_to_digits(BigIndex(parse_int<std::uint64_t>(fields[1], "outcome")), n, d)
                : parse_digit_text(fields[1], n, d);
    batch.digits.insert(batch.digits.end(), s.digits().begin(), s.digits().end());
    batch.log_probs.push_back(parse_real(fields[2]));
  }
  return batch;
}

SampleBatch load_batch_csv(const std::filesystem::path& path, int n, int d) {
  return parse_batch_csv(read_text_file(path), n, d);
}

std::string render_xeb_csv(std::span<const XebEstimate> rows) {
  std::string out(kXebCsvHeader);
  out.push_back('\n');
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", r.n, r.d,
                       r.sample_count ? std::to_string(*r.sample_count) : "",
                       to_string(r.mode), format_real(r.value),
                       format_real(r.log1p_value),
                       r.standard_error ? format_real(*r.standard_error) : "",
                       r.seed);
  }
  return out;
}

std::string render_xeb_json(std::span<const XebEstimate> rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["n"] = r.n;
    j["d"] = r.d;
    j["M"] = r.sample_count ? Json(*r.sample_count) : Json(nullptr);
    j["mode"] = std::string(to_string(r.mode));
    j["value"] = real_to_json(r.value);
    j["log1p_value"] = real_to_json(r.log1p_value);
    j["stderr"] = r.standard_error ? real_to_json(*r.standard_error) : Json(nullptr);
    j["seed"] = r.seed;
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::vector<XebEstimate> parse_xeb_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kXebCsvHeader) {
    throw InvalidParameter("XEB CSV header mismatch");
  }
  std::vector<XebEstimate> rows;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const auto f = split(lines[row], ',');
    if (f.size() != 8) {
      throw InvalidParameter(fmt::format("XEB CSV line {} needs 8 fields", row + 1));
    }
    XebEstimate r;
    r.n = parse_int<int>(f[0], "n");
    r.d = parse_int<int>(f[1], "d");
    if (!f[2].empty()) r.sample_count = parse_int<std::uint64_t>(f[2], "M");
    const auto mode = parse_xeb_mode(f[3]);
    if (!mode) throw InvalidParameter(fmt::format("unknown XEB mode '{}'", f[3]));
    r.mode = *mode;
    r.value = parse_real(f[4]);
    r.log1p_value = parse_real(f[5]);
    if (!f[6].empty()) r.standard_error = parse_real(f[6]);
    r.seed = parse_int<std::uint64_t>(f[7], "seed");
    rows.push_back(r);
  }
  return rows;
}

std::string render_pmf_csv(const DensePmf& pmf) {
  std::string out(kPmfCsvHeader);
  out.push_back('\n');
  for (Eigen::Index x = 0; x < pmf.probs.size(); ++x) {
    out += fmt::format("{},{}\n", x, format_real(pmf.probs(x)));
  }
  return out;
}

std::string render_timing_csv(std::span<const TimingRecord> rows) {
  std::string out(kTimingCsvHeader);
  out.push_back('\n');
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", to_string(r.task), r.n, r.d,
                       r.items, format_real(r.wall_seconds),
                       format_real(r.per_item_seconds));
  }
  return out;
}

std::string render_timing_json(std::span<const TimingRecord> rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(timing_to_json(r));
  return out.dump(2) + "\n";
}

std::string render_bench_json(const TimingRecord& sampling,
                              const std::optional<TimingRecord>& enumeration,
                              const AdvantageInputs& inputs,
                              const AdvantageReport& advantage) {
  Json j = timing_to_json(sampling);
  if (enumeration) j["enumeration"] = timing_to_json(*enumeration);
  Json a;
  a["ref_seconds"] = inputs.ref_seconds;
  a["n_ref"] = inputs.n_ref;
  a["n_target"] = inputs.n_target;
  a["d"] = inputs.d;
  a["log10_enum_seconds"] = advantage.log10_enum_seconds;
  a["log10_enum_years"] = advantage.log10_enum_years;
  a["log10_per_sample_seconds"] = advantage.log10_per_sample_seconds;
  a["log10_advantage"] = advantage.log10_advantage;
  j["advantage"] = std::move(a);
  return j.dump(2) + "\n";
}

void emit_report(std::span<const XebEstimate> rows, ReportFormat format,
                 const std::filesystem::path& path) {
  write_text_atomically(path, format == ReportFormat::kCsv
                                  ? render_xeb_csv(rows)
                                  : render_xeb_json(rows));
}

void emit_report(std::span<const TimingRecord> rows, ReportFormat format,
                 const std::filesystem::path& path) {
  write_text_atomically(path, format == ReportFormat::kCsv
                                  ? render_timing_csv(rows)
                                  : render_timing_json(rows));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("cannot read '{}'", path.string()));
  return std::move(buffer).str();
}

void write_text_atomically(const std::filesystem::path& path,
                           std::string_view content) {
  OutputTransaction out;
  out.stage(path, content);
  out.commit();
}

OutputTransaction::~OutputTransaction() {
  if (committed_) return;
  for (const auto& [temp, target] : staged_) {
    std::error_code ignored;
    std::filesystem::remove(temp, ignored);
  }
}

void OutputTransaction::stage(const std::filesystem::path& path,
                              std::string_view content) {
  if (committed_) throw IoError("output transaction already committed");
  auto temp = path;
  temp += ".partial";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    staged_.emplace_back(temp, path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  }
}

void OutputTransaction::commit() {
  for (std::size_t k = 0; k < staged_.size(); ++k) {
    const auto& [temp, target] = staged_[k];
    std::error_code ec;
    std::filesystem::rename(temp, target, ec);
    if (ec) {
      // All or nothing: drop the outputs already moved into place.
      for (std::size_t done = 0; done < k; ++done) {
        std::error_code ignored;
        std::filesystem::remove(staged_[done].second, ignored);
      }
      throw IoError(fmt::format("cannot move output into '{}': {}",
                                target.string(), ec.message()));
    }
  }
  committed_ = true;
}

}  // namespace xebsample

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

#include "xebsample/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "xebsample/bench.hpp"
#include "xebsample/error.hpp"
#include "xebsample/io.hpp"
#include "xebsample/oracle.hpp"
#include "xebsample/random.hpp"
#include "xebsample/sampler.hpp"
#include "xebsample/weight_table.hpp"
#include "xebsample/xeb.hpp"

namespace xebsample {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  unsigned workers = default_workers();
  std::uint64_t enum_cap = kDefaultEnumerationCap;
  bool allow_large_enum = false;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_format) {
  cmd->add_option("--workers", opts.workers, "Sampling threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--enum-cap", opts.enum_cap,
                  "Largest d^n materialized as a dense pmf")
      ->capture_default_str();
  cmd->add_flag("--allow-large-enum", opts.allow_large_enum,
                "Permit --enum-cap up to 2^30");
  if (with_format) {
    cmd->add_option("--format", opts.format, "Report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
  }
}

std::uint64_t effective_cap(const CommonOptions& opts) {
  if (opts.enum_cap > kDefaultEnumerationCap && !opts.allow_large_enum) {
    throw InvalidParameter("--enum-cap above 2^26 requires --allow-large-enum");
  }
  if (opts.enum_cap == 0 || opts.enum_cap > kMaxEnumerationCap) {
    throw InvalidParameter("--enum-cap must be in [1, 2^30]");
  }
  return opts.enum_cap;
}

ReportFormat report_format(const CommonOptions& opts) {
  return opts.format == "json" ? ReportFormat::kJson : ReportFormat::kCsv;
}

fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    const char* dir = std::getenv(kOutputDirEnv);
    if (dir != nullptr && *dir != '\0') return fs::path(dir) / p;
  }
  return p;
}

XebMode parse_mode_flag(const std::string& text) {
  if (text == "naive") return XebMode::kEmpiricalNaive;
  if (text == "logspace") return XebMode::kEmpiricalLogspace;
  if (text == "bruteforce") return XebMode::kTrueBruteforce;
  if (text == "closedform") return XebMode::kTrueClosedForm;
  if (auto mode = parse_xeb_mode(text)) return *mode;
  throw InvalidParameter(fmt::format("unknown XEB mode '{}'", text));
}

std::string render_rows(std::span<const XebEstimate> rows, ReportFormat format) {
  return format == ReportFormat::kCsv ? render_xeb_csv(rows)
                                      : render_xeb_json(rows);
}

// One sweep point: a fresh table seeded by mix(master, n), then truth and
// both empirical modes over M samples.
void sweep_point(int n, int d, std::uint64_t count, std::uint64_t master_seed,
                 bool bruteforce, std::uint64_t cap, unsigned workers,
                 std::vector<XebEstimate>& rows) {
  const std::uint64_t table_seed = mix_seed(master_seed, static_cast<std::uint64_t>(n));
  const auto table = generate_weight_table(n, d, table_seed);
  if (bruteforce && outcome_count_up_to(n, d, cap) != 0) {
    rows.push_back(true_xeb_bruteforce(table, cap));
  }
  rows.push_back(true_xeb_closed_form(table));
  const std::uint64_t sample_seed = mix_seed(table_seed, kSampleStream);
  const auto log_probs = draw_log_probs(table, count, sample_seed, workers);
  for (XebMode mode : {XebMode::kEmpiricalNaive, XebMode::kEmpiricalLogspace}) {
    rows.push_back(empirical_xeb_from_log_probs<double>(n, d, log_probs, mode,
                                                        sample_seed));
  }
}

struct SweepOptions {
  int d = 2;
  std::string n_list;
  std::uint64_t count = 1'000'000;
  std::uint64_t seed = 0;
  std::string out;
  CommonOptions common;
};

CLI::App* add_sweep(CLI::App& app, const char* name, const char* help,
                    SweepOptions& opts) {
  auto* cmd = app.add_subcommand(name, help);
  cmd->add_option("--d", opts.d, "Alphabet size")->capture_default_str();
  cmd->add_option("--n", opts.n_list, "Digit counts, e.g. 2..30 or 100..1000:10,1023")
      ->capture_default_str();
  cmd->add_option("--M", opts.count, "Samples per point")->capture_default_str();
  cmd->add_option("--seed", opts.seed, "Master seed")->capture_default_str();
  cmd->add_option("--out", opts.out, "Output file")->capture_default_str();
  add_common(cmd, opts.common, true);
  return cmd;
}

void run_sweep(const char* name, const SweepOptions& opts, bool bruteforce,
               std::ostream& err) {
  const auto ns = parse_n_list(opts.n_list);
  const std::uint64_t cap = effective_cap(opts.common);
  const fs::path out = resolve_output(opts.out);
  std::vector<XebEstimate> rows;
  for (int n : ns) {
    sweep_point(n, opts.d, opts.count, opts.seed, bruteforce, cap,
                opts.common.workers, rows);
    fmt::print(err, "{}: n={} done\n", name, n);
  }
  write_text_atomically(out, render_rows(rows, report_format(opts.common)));
  fmt::print(err, "{}: wrote {} rows to {}\n", name, rows.size(), out.string());
}

}  // namespace

std::vector<int> parse_n_list(std::string_view text) {
  auto to_int = [&](std::string_view item) {
    int value = 0;
    const auto* first = item.data();
    const auto* last = item.data() + item.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last || value < 1) {
      throw InvalidParameter(fmt::format("bad n-list item '{}' in '{}'", item, text));
    }
    return value;
  };
  std::vector<int> ns;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const auto item = text.substr(start, end - start);
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      ns.push_back(to_int(item));
    } else {
      const auto colon = item.find(':', dots);
      const int lo = to_int(item.substr(0, dots));
      const int hi = to_int(item.substr(dots + 2, colon == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : colon - dots - 2));
      const int step = colon == std::string_view::npos ? 1 : to_int(item.substr(colon + 1));
      if (hi < lo) {
        throw InvalidParameter(fmt::format("empty range '{}'", item));
      }
      for (int n = lo; n <= hi; n += step) ns.push_back(n);
    }
    start = end + 1;
  }
  return ns;
}

int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact sampling and linear cross-entropy benchmarking of "
               "product-form distributions over d^n outcomes",
               "xebsample"};
  app.require_subcommand(1);

  struct {
    int n = 10;
    int d = 2;
    std::uint64_t seed = 0;
    std::string out = "table.json";
  } gen_opts;
  auto* gen = app.add_subcommand("gen", "Generate a random weight table");
  gen->add_option("--n", gen_opts.n, "Digit count")->capture_default_str();
  gen->add_option("--d", gen_opts.d, "Alphabet size")->capture_default_str();
  gen->add_option("--seed", gen_opts.seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_opts.out, "Output file")->capture_default_str();

  struct {
    std::string table;
    std::uint64_t count = 1'000'000;
    std::uint64_t seed = 0;
    std::string out = "batch.csv";
    std::string pmf_out;
    std::string hist_out;
    CommonOptions common;
  } sample_opts;
  auto* sample = app.add_subcommand("sample", "Draw a batch of samples");
  sample->add_option("--table", sample_opts.table, "Weight table file")->required();
  sample->add_option("--M", sample_opts.count, "Sample count")->capture_default_str();
  sample->add_option("--seed", sample_opts.seed, "Sampling master seed")->capture_default_str();
  sample->add_option("--out", sample_opts.out, "Batch CSV")->capture_default_str();
  sample->add_option("--pmf-out", sample_opts.pmf_out, "Also write the exact pmf CSV");
  sample->add_option("--hist-out", sample_opts.hist_out,
                     "Also write the empirical histogram CSV");
  add_common(sample, sample_opts.common, false);

  struct {
    std::string table;
    std::string mode;
    std::string batch;
    std::uint64_t count = 1'000'000;
    std::uint64_t seed = 0;
    std::string out = "xeb.csv";
    CommonOptions common;
  } xeb_opts;
  auto* xeb = app.add_subcommand("xeb", "Compute one XEB value");
  xeb->add_option("--table", xeb_opts.table, "Weight table file")->required();
  xeb->add_option("--mode", xeb_opts.mode,
                  "naive | logspace | bruteforce | closedform")
      ->required();
  xeb->add_option("--batch", xeb_opts.batch,
                  "Batch CSV for empirical modes (otherwise sampled with --M/--seed)");
  xeb->add_option("--M", xeb_opts.count, "Sample count")->capture_default_str();
  xeb->add_option("--seed", xeb_opts.seed, "Sampling master seed")->capture_default_str();
  xeb->add_option("--out", xeb_opts.out, "Output file")->capture_default_str();
  add_common(xeb, xeb_opts.common, true);

  SweepOptions sweep_opts;
  sweep_opts.n_list = "2..30";
  sweep_opts.out = "sweep.csv";
  auto* sweep = add_sweep(app, "sweep",
                          "Empirical vs true XEB over small n (brute force up to the cap)",
                          sweep_opts);

  SweepOptions big_opts;
  big_opts.n_list = "100..1000:10,1023";
  big_opts.out = "bigsweep.csv";
  auto* bigsweep = add_sweep(app, "bigsweep",
                             "Empirical XEB over large n with closed-form truth",
                             big_opts);

  struct {
    int n = 1023;
    int d = 2;
    std::uint64_t count = 100'000;
    std::uint64_t seed = 0;
    int enum_n = 20;
    std::optional<int> target_n;
    std::optional<double> ref_seconds;
    std::optional<int> ref_n;
    std::string out = "bench.json";
    CommonOptions common;
  } bench_opts;
  auto* bench = app.add_subcommand("bench", "Time sampling and enumeration; extrapolate the advantage");
  bench->add_option("--n", bench_opts.n, "Digit count for sampling")->capture_default_str();
  bench->add_option("--d", bench_opts.d, "Alphabet size")->capture_default_str();
  bench->add_option("--M", bench_opts.count, "Timed samples")->capture_default_str();
  bench->add_option("--seed", bench_opts.seed, "Seed")->capture_default_str();
  bench->add_option("--enum-n", bench_opts.enum_n, "Digit count for timed enumeration")
      ->capture_default_str();
  bench->add_option("--target-n", bench_opts.target_n,
                    "Extrapolation target (defaults to --n)");
  auto* ref_seconds = bench->add_option(
      "--ref-seconds", bench_opts.ref_seconds,
      "Use this enumeration time instead of measuring one");
  bench->add_option("--ref-n", bench_opts.ref_n, "Digit count of --ref-seconds")
      ->needs(ref_seconds);
  ref_seconds->needs(bench->get_option("--ref-n"));
  bench->add_option("--out", bench_opts.out, "Output file")->capture_default_str();
  add_common(bench, bench_opts.common, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) {
      const auto table = generate_weight_table(gen_opts.n, gen_opts.d, gen_opts.seed);
      const fs::path path = resolve_output(gen_opts.out);
      write_text_atomically(path, render_weight_table_json(table));
      fmt::print(err, "gen: wrote {}\n", path.string());
    } else if (*sample) {
      const auto table = load_weight_table(sample_opts.table);
      const std::uint64_t cap = effective_cap(sample_opts.common);
      const auto batch = draw_batch(table, sample_opts.count, sample_opts.seed,
                                    sample_opts.common.workers);
      OutputTransaction tx;
      tx.stage(resolve_output(sample_opts.out), render_batch_csv(batch));
      if (!sample_opts.pmf_out.empty()) {
        tx.stage(resolve_output(sample_opts.pmf_out),
                 render_pmf_csv(enumerate_pmf(table, cap)));
      }
      if (!sample_opts.hist_out.empty()) {
        tx.stage(resolve_output(sample_opts.hist_out),
                 render_pmf_csv(empirical_histogram(batch, cap)));
      }
      tx.commit();
      fmt::print(err, "sample: wrote {} samples\n", batch.size());
    } else if (*xeb) {
      const auto table = load_weight_table(xeb_opts.table);
      const XebMode mode = parse_mode_flag(xeb_opts.mode);
      const std::uint64_t cap = effective_cap(xeb_opts.common);
      XebEstimate row;
      if (mode == XebMode::kTrueBruteforce) {
        row = true_xeb_bruteforce(table, cap);
      } else if (mode == XebMode::kTrueClosedForm) {
        row = true_xeb_closed_form(table);
      } else if (!xeb_opts.batch.empty()) {
        auto batch = load_batch_csv(xeb_opts.batch, table.n(), table.d());
        for (std::size_t m = 0; m < batch.size(); ++m) {
          batch.log_probs[m] = log_prob(table, batch.sample(m));
        }
        batch.master_seed = xeb_opts.seed;
        row = empirical_xeb(table, batch, mode);
      } else {
        const auto log_probs = draw_log_probs(table, xeb_opts.count, xeb_opts.seed,
                                              xeb_opts.common.workers);
        row = empirical_xeb_from_log_probs<double>(table.n(), table.d(), log_probs,
                                                   mode, xeb_opts.seed);
      }
      const fs::path path = resolve_output(xeb_opts.out);
      write_text_atomically(path, render_rows(std::span(&row, 1),
                                              report_format(xeb_opts.common)));
      fmt::print(err, "xeb: {} = {}\n", to_string(row.mode), format_real(row.value));
    } else if (*sweep) {
      run_sweep("sweep", sweep_opts, true, err);
    } else if (*bigsweep) {
      run_sweep("bigsweep", big_opts, false, err);
    } else if (*bench) {
      const auto table = generate_weight_table(bench_opts.n, bench_opts.d, bench_opts.seed);
      const auto sampling = time_sampling(table, bench_opts.count, bench_opts.seed);
      fmt::print(err, "bench: sampling {} s/sample\n", format_real(sampling.per_item_seconds));
      std::optional<TimingRecord> enumeration;
      AdvantageInputs inputs;
      inputs.d = bench_opts.d;
      inputs.n_target = bench_opts.target_n.value_or(bench_opts.n);
      if (bench_opts.ref_seconds) {
        inputs.ref_seconds = *bench_opts.ref_seconds;
        inputs.n_ref = *bench_opts.ref_n;
      } else {
        const auto enum_table = generate_weight_table(
            bench_opts.enum_n, bench_opts.d,
            mix_seed(bench_opts.seed, static_cast<std::uint64_t>(bench_opts.enum_n)));
        enumeration = time_enumeration(enum_table, effective_cap(bench_opts.common));
        inputs.ref_seconds = enumeration->wall_seconds;
        inputs.n_ref = bench_opts.enum_n;
        fmt::print(err, "bench: enumeration {} s at n={}\n",
                   format_real(enumeration->wall_seconds), bench_opts.enum_n);
      }
      const double log10_enum = extrapolate_enum_time(
          inputs.ref_seconds, inputs.n_ref, inputs.n_target, inputs.d);
      const auto advantage = advantage_ratio(log10_enum, sampling.per_item_seconds);
      const fs::path path = resolve_output(bench_opts.out);
      write_text_atomically(path, render_bench_json(sampling, enumeration, inputs, advantage));
      fmt::print(err, "bench: log10 advantage {}\n", format_real(advantage.log10_advantage));
    }
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace xebsample

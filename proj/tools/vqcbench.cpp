// Copyright 2026 The vqcbench developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "vqcbench/harness.hpp"

namespace {

// Exit codes: 0 success, 1 usage error, 2 data error, 3 run failure.
constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kRunFailure = 3;

void print_record(const vqcbench::RunRecord& rec) {
  if (rec.ok) {
    std::cout << rec.run_id << ": test acc "
              << vqcbench::detail::format_fixed(rec.test_metrics.accuracy, 4)
              << "  f1 "
              << vqcbench::detail::format_fixed(rec.test_metrics.f1, 4)
              << "  (" << vqcbench::detail::format_fixed(rec.wall_seconds, 1)
              << " s)\n";
  } else {
    std::cout << rec.run_id << ": FAILED: " << rec.error << '\n';
  }
}

int do_preprocess(const std::string& dataset, const std::string& input,
                  std::uint64_t seed, const std::string& out) {
  try {
    vqcbench::preprocess_dataset(dataset, input, seed, out);
    std::cout << "prepared '" << dataset << "' under " << out << '\n';
    return kOk;
  } catch (const vqcbench::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
}

int do_run(const std::string& config_path) {
  try {
    const vqcbench::ExperimentConfig cfg = vqcbench::load_config(config_path);
    std::vector<vqcbench::RunRecord> records;
    for (std::uint64_t seed : cfg.resolved_seeds()) {
      records.push_back(vqcbench::run_experiment(cfg, seed));
      print_record(records.back());
    }
    vqcbench::write_reports(records, cfg.out_dir);
    std::cout << "reports written to " << cfg.out_dir << '\n';
    return kOk;
  } catch (const vqcbench::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const vqcbench::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRunFailure;
  }
}

int do_grid(const std::string& config_path, int workers) {
  try {
    const vqcbench::ExperimentConfig cfg = vqcbench::load_config(config_path);
    const std::vector<vqcbench::RunRecord> records =
        vqcbench::run_grid(cfg, workers);
    if (records.empty()) {
      std::cerr << "warning: grid is empty, nothing to run\n";
      return kOk;
    }
    std::size_t failed = 0;
    for (const vqcbench::RunRecord& rec : records) {
      print_record(rec);
      if (!rec.ok) ++failed;
    }
    vqcbench::write_reports(records, cfg.out_dir);
    std::cout << "reports written to " << cfg.out_dir;
    if (failed > 0) {
      std::cout << " (" << failed << " of " << records.size()
                << " runs failed; see failures.txt)";
    }
    std::cout << '\n';
    return kOk;
  } catch (const vqcbench::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const vqcbench::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRunFailure;
  }
}

int do_report(const std::string& in_dir, const std::string& out_dir) {
  try {
    const std::vector<vqcbench::RunRecord> records =
        vqcbench::read_records_dir(in_dir);
    if (records.empty()) {
      std::cerr << "error: no run records found under '" << in_dir << "'\n";
      return kDataError;
    }
    vqcbench::write_reports(records, out_dir);
    std::cout << "reports written to " << out_dir << '\n';
    return kOk;
  } catch (const vqcbench::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRunFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "vqcbench: variational quantum classifier benchmark on fraud data"};
  app.require_subcommand(1);

  auto* preprocess =
      app.add_subcommand("preprocess", "Prepare a raw dataset CSV");
  std::string pp_dataset, pp_input, pp_out = "data";
  std::uint64_t pp_seed = 12345;
  preprocess->add_option("--dataset", pp_dataset, "banksim or european")
      ->required();
  preprocess->add_option("--input", pp_input, "raw CSV path")->required();
  preprocess->add_option("--seed", pp_seed, "preparation seed");
  preprocess->add_option("--out", pp_out, "output directory");

  auto* run = app.add_subcommand("run", "Run one configured experiment");
  std::string run_config;
  run->add_option("--config", run_config, "config file")->required();

  auto* grid = app.add_subcommand("grid", "Run the full experiment grid");
  std::string grid_config;
  int grid_workers = 1;
  grid->add_option("--config", grid_config, "config file")->required();
  grid->add_option("--workers", grid_workers, "parallel workers");

  auto* report = app.add_subcommand("report", "Regenerate reports from records");
  std::string report_in, report_out;
  report->add_option("--in", report_in, "directory holding run records")
      ->required();
  report->add_option("--out", report_out, "report output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  if (preprocess->parsed()) {
    return do_preprocess(pp_dataset, pp_input, pp_seed, pp_out);
  }
  if (run->parsed()) return do_run(run_config);
  if (grid->parsed()) return do_grid(grid_config, grid_workers);
  if (report->parsed()) return do_report(report_in, report_out);
  return kUsageError;
}

// Copyright 2026 The qdcavity Authors
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


// Command-line front end: run builtin or file-based scenarios, list builtins,
// compare cavity against open-geometry storage, validate config files.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qdcav/csv.hpp"
#include "qdcav/errors.hpp"
#include "qdcav/scenario.hpp"
#include "qdcav/version.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kParse = 2, kNumeric = 3 };

std::mutex g_print;

void print_err(const std::string& msg) {
  std::lock_guard<std::mutex> lock(g_print);
  std::cerr << "qdcav: " << msg << '\n';
}

qdcav::ScenarioConfig resolve(const std::string& what, const std::vector<std::string>& sets,
                              const std::string& out_dir) {
  qdcav::ScenarioConfig config = qdcav::load_config(what);
  qdcav::apply_overrides(config, sets);
  if (!out_dir.empty()) config.output_dir = out_dir;
  return config;
}

int run_one(const qdcav::ScenarioConfig& config, bool quiet) {
  try {
    const qdcav::RunResult result = qdcav::run(config);
    {
      std::lock_guard<std::mutex> lock(g_print);
      if (!quiet) std::cout << qdcav::summary_json(result.summary);
      std::cerr << "wrote " << result.csv_path.string() << " and " << result.summary_path.string() << '\n';
    }
    if (result.error) {
      print_err(config.name + ": " + *result.error);
      return kNumeric;
    }
    return kOk;
  } catch (const qdcav::ParseError& e) {
    print_err(config.name + ": " + e.what());
    return kParse;
  } catch (const std::exception& e) {
    print_err(config.name + ": " + e.what());
    return kNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two quantum dots coupled through a plasmon, each in its own cavity: Lindblad propagation, "
               "concurrence and photon pair correlations."};
  app.set_version_flag("--version", std::string(qdcav::kVersion));
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 1 usage error, 2 configuration parse error, 3 numeric or run failure.\n"
      "Config keys carry their units (system.g_mev, integrator.dt_fs, ...); `qdcav validate` prints them all.");

  std::vector<std::string> targets;
  std::vector<std::string> sets;
  std::string out_dir;
  int jobs = 1;
  bool quiet = false;
  auto* run_cmd = app.add_subcommand("run", "Run one or more scenarios and write <name>.csv and <name>.summary.json");
  run_cmd->add_option("scenario", targets, "Builtin scenario name or path to a JSON config")->required();
  run_cmd->add_option("--set", sets, "Override a dotted key, e.g. --set system.g_mev=10 (repeatable)");
  run_cmd->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  run_cmd->add_option("--jobs", jobs, "Scenarios to run in parallel; each gets <out>/<name>/")
      ->check(CLI::PositiveNumber);
  run_cmd->add_flag("--quiet", quiet, "Do not print the summary to stdout");

  app.add_subcommand("list", "List builtin scenarios");

  std::string storage_target;
  std::vector<std::string> storage_sets;
  double probe = -1.0;
  auto* cmp_cmd = app.add_subcommand(
      "compare-storage", "Concurrence ratio between a cavity scenario and its open-geometry twin (g = 0)");
  cmp_cmd->add_option("scenario", storage_target, "Builtin scenario name or path to a JSON config")->required();
  cmp_cmd->add_option("--set", storage_sets, "Override a dotted key (repeatable)");
  cmp_cmd->add_option("--at", probe, "Probe time in fs (default: analysis.storage_probe_fs or the run end)");

  std::string validate_target;
  auto* val_cmd = app.add_subcommand("validate", "Parse a config (file or builtin) and print the resolved form");
  val_cmd->add_option("config", validate_target, "Path to a JSON config or builtin name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand("list")) {
      for (const auto& b : qdcav::builtin_scenarios()) std::cout << b.name << "\t" << b.summary << '\n';
      return kOk;
    }
    if (app.got_subcommand("validate")) {
      std::cout << qdcav::to_json(qdcav::load_config(validate_target)) << '\n';
      return kOk;
    }
    if (app.got_subcommand("compare-storage")) {
      const qdcav::ScenarioConfig cavity = resolve(storage_target, storage_sets, "");
      const qdcav::StorageReport r = qdcav::compare_storage(
          cavity, qdcav::open_geometry(cavity), probe >= 0.0 ? std::optional<double>(probe) : std::nullopt);
      std::cout << "{\n  \"scenario\": \"" << cavity.name << "\",\n  \"t_probe_fs\": "
                << qdcav::format_number(r.t_probe_fs) << ",\n  \"concurrence_cavity\": "
                << qdcav::format_number(r.c_cavity) << ",\n  \"concurrence_open\": " << qdcav::format_number(r.c_open)
                << ",\n  \"ratio\": " << qdcav::format_number(r.ratio) << "\n}\n";
      return kOk;
    }

    // run
    std::vector<qdcav::ScenarioConfig> configs;
    for (const auto& t : targets) configs.push_back(resolve(t, sets, out_dir));
    if (configs.size() > 1) {
      for (auto& c : configs) c.output_dir = (std::filesystem::path(c.output_dir) / c.name).string();
    }
    std::vector<int> codes(configs.size(), kOk);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (std::size_t i = next++; i < configs.size(); i = next++) codes[i] = run_one(configs[i], quiet);
    };
    std::vector<std::thread> pool;
    const auto n_threads = std::min<std::size_t>(std::size_t(jobs), configs.size());
    for (std::size_t k = 1; k < n_threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return *std::max_element(codes.begin(), codes.end());
  } catch (const qdcav::ParseError& e) {
    print_err(e.what());
    return kParse;
  } catch (const std::exception& e) {
    print_err(e.what());
    return kNumeric;
  }
}

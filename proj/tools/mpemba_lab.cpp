// Copyright 2026 The mpemba-lab Authors
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

// mpemba-lab: run one experiment family and write its CSV and manifest.
//
//   mpemba-lab <experiment> [--config FILE] [--set key=value]... [--out DIR]
//              [--seed N] [--threads N]

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpemba/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum Mpemba robustness experiments"};
  std::string experiment;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int threads = 1;

  app.add_option("experiment", experiment, "Experiment id")
      ->required()
      ->check(CLI::IsMember(mpemba::experiment_ids()));
  app.add_option("--config", config_path, "Key-value config file");
  app.add_option("--set", overrides, "Override a config key (key=value)");
  app.add_option("--out", out_dir, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "Base seed (overrides the config)");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  mpemba::Config cfg;
  try {
    if (!config_path.empty()) cfg = mpemba::Config::parse_file(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw mpemba::ConfigError("--set expects key=value, got '" + kv + "'");
      }
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
  } catch (const mpemba::ConfigError& e) {
    std::cerr << "mpemba-lab: config error: " << e.what() << "\n";
    return 2;
  }

  mpemba::RunOptions opts;
  opts.out_dir = out_dir;
  opts.threads = threads;
  if (*seed_opt) opts.seed = seed;

  try {
    const auto paths = mpemba::run_and_write(experiment, cfg, opts);
    std::cout << paths.csv.string() << "\n" << paths.manifest.string() << "\n";
  } catch (const mpemba::ConfigError& e) {
    std::cerr << "mpemba-lab: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mpemba-lab: " << experiment << " failed: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

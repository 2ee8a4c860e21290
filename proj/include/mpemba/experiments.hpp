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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpemba/config.hpp"

namespace mpemba {

// Experiment families understood by the CLI.
inline const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"dicke-therm", "sho-therm", "speedup-sweep",
                                               "ruc-ea", "ruc-dimension"};
  return ids;
}

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config's base seed
  int threads = 1;
};

struct ExperimentOutput {
  std::string experiment;
  std::string csv;
  std::map<std::string, std::string> parameters;  // effective values incl. defaults
  std::vector<std::uint64_t> seeds;
};

// Runs an experiment and returns its CSV text. Throws ConfigError for bad
// configuration and other mpemba::Error types for numerical failures.
ExperimentOutput run_experiment(const std::string& id, const Config& cfg, const RunOptions& opts);

struct RunArtifacts {
  std::filesystem::path csv;
  std::filesystem::path manifest;
};

// run_experiment plus <out>/<id>.csv and <out>/<id>.manifest.json.
RunArtifacts run_and_write(const std::string& id, const Config& cfg, const RunOptions& opts);

// "%.12g"
std::string format_real(double v);

}  // namespace mpemba

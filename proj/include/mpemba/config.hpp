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
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mpemba/errors.hpp"

namespace mpemba {

// Key-value experiment configuration.
//
//   # comment
//   spins = 40
//   epsilons = 0, 1e-3, 1e-2
//   thetas = 0.2pi, 0.5pi
//   etas = logspace(1e-5, 1e-3, 3)
//
// Values remember the line they came from so errors can point at it.
class Config {
 public:
  Config() = default;

  static Config parse(std::istream& in, const std::string& source = "<config>");
  static Config parse_file(const std::string& path);

  // Sets or overrides a key (command-line overrides have line 0).
  void set(const std::string& key, const std::string& value, int line = 0);
  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> list(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int> int_list(const std::string& key, const std::vector<int>& fallback) const;

  // Throws ConfigError naming the first key not in `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  // Resolved key/value pairs, for manifests.
  std::map<std::string, std::string> values() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

  std::string source_ = "<config>";
  std::map<std::string, Entry> entries_;
};

}  // namespace mpemba

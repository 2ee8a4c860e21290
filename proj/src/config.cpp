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

#include "mpemba/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace mpemba {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

// Parses a real number with an optional trailing "pi" factor.
std::optional<double> parse_real(std::string s) {
  s = trim(s);
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s = trim(s.substr(0, s.size() - 2));
    if (s.empty()) return factor;
    if (s.back() == '*') s = trim(s.substr(0, s.size() - 1));
  }
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v * factor;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
  Config cfg;
  cfg.source_ = source;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line) + ": expected 'key = value'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(source + ":" + std::to_string(line) + ": empty key");
    }
    if (cfg.entries_.count(key) != 0) {
      throw ConfigError(source + ":" + std::to_string(line) + ": duplicate key '" + key + "'");
    }
    cfg.entries_[key] = {value, line};
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  return parse(in, path);
}

void Config::set(const std::string& key, const std::string& value, int line) {
  entries_[key] = {value, line};
}

void Config::fail(const std::string& key, const std::string& message) const {
  const auto it = entries_.find(key);
  const int line = it == entries_.end() ? 0 : it->second.line;
  const std::string where =
      line > 0 ? source_ + ":" + std::to_string(line) : std::string("<command line>");
  throw ConfigError(where + ": " + key + ": " + message);
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second.value;
}

double Config::number(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const auto v = parse_real(it->second.value);
  if (!v) fail(key, "expected a number, got '" + it->second.value + "'");
  return *v;
}

int Config::integer(const std::string& key, int fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& s = it->second.value;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, "expected an integer, got '" + s + "'");
  return v;
}

std::uint64_t Config::unsigned_integer(const std::string& key, std::uint64_t fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& s = it->second.value;
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(key, "expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

std::vector<double> Config::list(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string value = trim(it->second.value);
  std::vector<double> out;
  if (value.rfind("logspace(", 0) == 0 && value.back() == ')') {
    const auto args = split(value.substr(9, value.size() - 10), ',');
    if (args.size() != 3) fail(key, "logspace takes (lo, hi, count)");
    const auto lo = parse_real(args[0]);
    const auto hi = parse_real(args[1]);
    const auto n = parse_real(args[2]);
    if (!lo || !hi || !n || *lo <= 0.0 || *hi < *lo || *n < 1 || *n != std::floor(*n)) {
      fail(key, "logspace needs 0 < lo <= hi and an integer count >= 1");
    }
    const int count = static_cast<int>(*n);
    for (int k = 0; k < count; ++k) {
      const double f = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
      out.push_back(std::pow(10.0, std::log10(*lo) + f * (std::log10(*hi) - std::log10(*lo))));
    }
    out.front() = *lo;
    if (count > 1) out.back() = *hi;
    return out;
  }
  if (value.empty()) fail(key, "list is empty");
  for (const auto& part : split(value, ',')) {
    const auto v = parse_real(part);
    if (!v) fail(key, "cannot parse list element '" + part + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<int> Config::int_list(const std::string& key, const std::vector<int>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<int> out;
  for (const double v : list(key, {})) {
    if (v != std::floor(v)) fail(key, "expected integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void Config::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [key, entry] : entries_) {
    if (allowed.count(key) == 0) fail(key, "unknown key for this experiment");
  }
}

std::map<std::string, std::string> Config::values() const {
  std::map<std::string, std::string> out;
  for (const auto& [key, entry] : entries_) out[key] = entry.value;
  return out;
}

}  // namespace mpemba

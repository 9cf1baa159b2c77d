// Copyright 2026 The spinsqz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Flat "key = value" scenario configuration.
//
//   # comment
//   scenario = vc_params
//   N = 100
//   Delta_a = 2pi*50e6      # 2pi* multiplies by 2 pi
//   kappa_ratios = 1e-5, 1e-2
//
// Keys are case-sensitive and must appear in the schema; duplicates are errors.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinsqz/types.hpp"

namespace spinsqz {

enum class ValueType { Number, Integer, Text, NumberList, IntegerList };

struct KeySchema {
  std::string_view key;
  ValueType type;
  std::string_view help;
};

// Every accepted key, in the order used when writing resolved metadata.
const std::vector<KeySchema>& config_schema();

class Config {
 public:
  struct Entry {
    std::string value;  // trimmed raw text
    int line = 0;
  };

  // Throws ConfigError with the offending line number.
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  bool has(std::string_view key) const;
  int line_of(std::string_view key) const;  // 0 when absent

  // Typed accessors; throw ConfigError naming the key (and line when present).
  double number(std::string_view key) const;
  double number_or(std::string_view key, double fallback) const;
  long long integer(std::string_view key) const;
  long long integer_or(std::string_view key, long long fallback) const;
  std::uint64_t unsigned_integer_or(std::string_view key, std::uint64_t fallback) const;
  std::string text(std::string_view key) const;
  std::string text_or(std::string_view key, std::string fallback) const;
  std::vector<double> number_list(std::string_view key) const;
  std::vector<long long> integer_list(std::string_view key) const;

  void require(std::string_view key, std::string_view context) const;
  // Sets or replaces a value (line 0). For programmatic overrides.
  void set(std::string_view key, std::string value);

  const std::map<std::string, Entry, std::less<>>& entries() const { return entries_; }

 private:
  const Entry& entry(std::string_view key) const;
  std::map<std::string, Entry, std::less<>> entries_;
};

// Number literal with optional "2pi*" prefix. Throws InvalidArgument.
double parse_number(std::string_view text);

// Shortest round-trip decimal form (%.17g).
std::string format_number(double value);

}  // namespace spinsqz

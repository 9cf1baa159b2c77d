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

#include "spinsqz/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spinsqz {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
  if (key.empty() || !(std::isalpha(static_cast<unsigned char>(key[0])) || key[0] == '_')) {
    return false;
  }
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

const KeySchema* find_schema(std::string_view key) {
  for (const KeySchema& s : config_schema()) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

long long to_integer(std::string_view text) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size()) return v;
  const double d = parse_number(text);
  if (std::floor(d) != d || std::abs(d) > 9007199254740992.0) {
    throw InvalidArgument("expected an integer, got '" + std::string(text) + "'");
  }
  return static_cast<long long>(d);
}

// Validates a raw value against its declared type.
void check_type(const KeySchema& schema, std::string_view value) {
  switch (schema.type) {
    case ValueType::Number: parse_number(value); break;
    case ValueType::Integer: to_integer(value); break;
    case ValueType::Text: break;
    case ValueType::NumberList:
      for (auto item : split_list(value)) parse_number(item);
      break;
    case ValueType::IntegerList:
      for (auto item : split_list(value)) to_integer(item);
      break;
  }
}

}  // namespace

const std::vector<KeySchema>& config_schema() {
  static const std::vector<KeySchema> schema = {
      {"scenario", ValueType::Text, "scenario name"},
      {"output_dir", ValueType::Text, "directory for CSV and metadata output"},
      {"seed", ValueType::Integer, "64-bit RNG seed"},
      // model
      {"family", ValueType::Text, "dicke | pdd | oat | tact_rwa | vc"},
      {"N", ValueType::Integer, "atom number"},
      {"delta", ValueType::Number, "linear Jz coefficient [rad/s]"},
      {"chi", ValueType::Number, "nonlinearity [rad/s]"},
      {"omega", ValueType::Number, "drive frequency [rad/s]"},
      {"gamma0", ValueType::Number, "collective decay [rad/s]"},
      {"initial", ValueType::Text, "down | up | coherent | bw | mixed"},
      {"initial_theta", ValueType::Number, "coherent-state polar angle"},
      {"initial_phi", ValueType::Number, "coherent-state azimuth"},
      // numerics
      {"dt", ValueType::Number, "RK4 step"},
      {"t_end", ValueType::Number, "final time"},
      {"record_every", ValueType::Integer, "record stride in steps"},
      // scans and protocols
      {"N_values", ValueType::IntegerList, "atom numbers for qfi_peak_scan"},
      {"search_factor", ValueType::Number, "search horizon in units of the peak-time estimate"},
      {"t_state", ValueType::Number, "evolution time of the probe state"},
      {"M_max", ValueType::Integer, "measurements per protocol run"},
      {"phi_true", ValueType::Number, "encoded phase"},
      {"n_seeds", ValueType::Integer, "protocol repetitions with seeds seed, seed+1, ..."},
      {"window", ValueType::Number, "posterior half-width around zero"},
      {"grid_points", ValueType::Integer, "posterior grid size"},
      {"n_theta", ValueType::Integer, "Q-function polar samples"},
      {"n_phi", ValueType::Integer, "Q-function azimuth samples"},
      {"n_samples", ValueType::Integer, "drive profile samples"},
      {"beta0", ValueType::Number, "injected field amplitude"},
      {"Delta_c_prime", ValueType::Number, "dressed cavity detuning [rad/s]"},
      {"kappa_ratios", ValueType::NumberList, "kappa / |Delta_c'| values"},
      {"drives", ValueType::Text, "comma-separated subset of pdd, oat"},
      // lab inputs
      {"Lambda", ValueType::Number, "single-atom vacuum coupling [rad/s]"},
      {"gamma", ValueType::Number, "atomic decay [rad/s]"},
      {"kappa", ValueType::Number, "cavity decay [rad/s]"},
      {"Delta_a", ValueType::Number, "atom-pump detuning [rad/s]"},
      {"Delta_c", ValueType::Number, "cavity-pump detuning [rad/s]"},
      {"eta0", ValueType::Number, "pump amplitude [rad/s]"},
      {"tau", ValueType::Number, "drop time [s]"},
      {"omega_r", ValueType::Number, "recoil frequency [rad/s]"},
      {"k", ValueType::Number, "wavenumber [1/m]"},
      {"g", ValueType::Number, "gravity [m/s^2]"},
      {"kgtau", ValueType::Number, "k g tau override [rad/s]"},
  };
  return schema;
}

double parse_number(std::string_view text) {
  std::string_view body = trim(text);
  double scale = 1.0;
  if (!body.empty() && (body.front() == '-' || body.front() == '+') && body.substr(1, 4) == "2pi*") {
    if (body.front() == '-') scale = -1.0;
    body.remove_prefix(1);
  }
  if (body.substr(0, 4) == "2pi*") {
    scale *= kTwoPi;
    body = trim(body.substr(4));
  }
  if (body.empty()) throw InvalidArgument("empty number");
  if (body.front() == '+' && scale == 1.0) body.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(v)) {
    throw InvalidArgument("malformed number '" + std::string(text) + "'");
  }
  return scale * v;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Config Config::parse(std::string_view text) {
  Config cfg;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError("invalid key '" + std::string(key) + "'", line_no);
    if (value.empty()) throw ConfigError("missing value for '" + std::string(key) + "'", line_no);

    const KeySchema* schema = find_schema(key);
    if (schema == nullptr) throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    if (auto it = cfg.entries_.find(key); it != cfg.entries_.end()) {
      throw ConfigError("duplicate key '" + std::string(key) + "' (lines " +
                            std::to_string(it->second.line) + " and " + std::to_string(line_no) +
                            ")",
                        line_no);
    }
    try {
      check_type(*schema, value);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string(key) + ": " + e.what(), line_no);
    }
    cfg.entries_.emplace(std::string(key), Entry{std::string(value), line_no});
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool Config::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

int Config::line_of(std::string_view key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

const Config::Entry& Config::entry(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required key '" + std::string(key) + "'");
  return it->second;
}

void Config::require(std::string_view key, std::string_view context) const {
  if (!has(key)) {
    throw ConfigError("missing required key '" + std::string(key) + "' for " +
                      std::string(context));
  }
}

void Config::set(std::string_view key, std::string value) {
  const KeySchema* schema = find_schema(key);
  if (schema == nullptr) throw ConfigError("unknown key '" + std::string(key) + "'");
  try {
    check_type(*schema, value);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
  entries_[std::string(key)] = Entry{std::move(value), 0};
}

double Config::number(std::string_view key) const {
  const Entry& e = entry(key);
  try {
    return parse_number(e.value);
  } catch (const InvalidArgument& ex) {
    throw ConfigError(std::string(key) + ": " + ex.what(), e.line);
  }
}

double Config::number_or(std::string_view key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long long Config::integer(std::string_view key) const {
  const Entry& e = entry(key);
  try {
    return to_integer(e.value);
  } catch (const InvalidArgument& ex) {
    throw ConfigError(std::string(key) + ": " + ex.what(), e.line);
  }
}

long long Config::integer_or(std::string_view key, long long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::uint64_t Config::unsigned_integer_or(std::string_view key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = entry(key);
  std::uint64_t v = 0;
  const char* end = e.value.data() + e.value.size();
  const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key) + ": expected an unsigned 64-bit integer", e.line);
  }
  return v;
}

std::string Config::text(std::string_view key) const { return entry(key).value; }

std::string Config::text_or(std::string_view key, std::string fallback) const {
  return has(key) ? text(key) : fallback;
}

std::vector<double> Config::number_list(std::string_view key) const {
  const Entry& e = entry(key);
  std::vector<double> out;
  try {
    for (auto item : split_list(e.value)) out.push_back(parse_number(item));
  } catch (const InvalidArgument& ex) {
    throw ConfigError(std::string(key) + ": " + ex.what(), e.line);
  }
  return out;
}

std::vector<long long> Config::integer_list(std::string_view key) const {
  const Entry& e = entry(key);
  std::vector<long long> out;
  try {
    for (auto item : split_list(e.value)) out.push_back(to_integer(item));
  } catch (const InvalidArgument& ex) {
    throw ConfigError(std::string(key) + ": " + ex.what(), e.line);
  }
  return out;
}

}  // namespace spinsqz

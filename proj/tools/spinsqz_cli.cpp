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

// Command-line scenario runner on top of the C interface.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinsqz/spinsqz.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int exit_code(sqz_status s) {
  switch (s) {
    case SQZ_OK:
      return kExitOk;
    case SQZ_ERR_CONFIG:
    case SQZ_ERR_STEP_SIZE:
    case SQZ_ERR_INVALID_ARGUMENT:
    case SQZ_ERR_DIMENSION:
      return kExitConfig;
    case SQZ_ERR_NUMERICAL:
      return kExitNumerical;
    default:
      return kExitFailure;
  }
}

int report(sqz_status s, const std::string& path) {
  std::fprintf(stderr, "spinsqz: %s: %s: %s\n", path.c_str(), sqz_status_name(s), sqz_last_error());
  return exit_code(s);
}

// Fetches a string through the size-query convention of the C API.
template <class Fn>
sqz_status fetch_text(Fn&& fn, std::string& out) {
  std::size_t needed = 0;
  sqz_status s = fn(nullptr, 0, &needed);
  if (s != SQZ_OK) return s;
  std::vector<char> buf(needed);
  s = fn(buf.data(), buf.size(), &needed);
  if (s == SQZ_OK) out.assign(buf.data());
  return s;
}

struct ConfigHandle {
  sqz_config* ptr = nullptr;
  ~ConfigHandle() { sqz_config_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective-spin squeezing simulations driven by flat config files"};
  app.set_version_flag("--version", std::string(sqz_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;

  auto* run = app.add_subcommand("run", "Run the scenario and write CSV files plus metadata");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("-o,--output-dir", output_dir, "Override output_dir from the config");

  auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
  validate->add_option("config", config_path, "Config file")->required();

  auto* ledger = app.add_subcommand("ledger", "Print the approximation ledger for lab inputs");
  ledger->add_option("config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  ConfigHandle cfg;
  sqz_status s = sqz_config_load(config_path.c_str(), &cfg.ptr);
  if (s != SQZ_OK) return report(s, config_path);

  if (*validate) {
    s = sqz_config_validate(cfg.ptr);
    if (s != SQZ_OK) return report(s, config_path);
    std::string meta;
    s = fetch_text([&](char* b, std::size_t n, std::size_t* need) {
      return sqz_metadata_text(cfg.ptr, b, n, need);
    }, meta);
    if (s != SQZ_OK) return report(s, config_path);
    std::fputs(meta.c_str(), stdout);
    return kExitOk;
  }

  if (*ledger) {
    std::string text;
    s = fetch_text([&](char* b, std::size_t n, std::size_t* need) {
      return sqz_ledger_report(cfg.ptr, b, n, need);
    }, text);
    if (s != SQZ_OK) return report(s, config_path);
    std::fputs(text.c_str(), stdout);
    return kExitOk;
  }

  // A single call: the run must not be repeated just to size the buffer.
  std::vector<char> files(1 << 16);
  std::size_t needed = 0;
  const char* dir = output_dir.empty() ? nullptr : output_dir.c_str();
  s = sqz_run_scenario(cfg.ptr, dir, files.data(), files.size(), &needed);
  if (s != SQZ_OK) return report(s, config_path);
  std::fputs(files.data(), stdout);
  if (needed > files.size()) std::fputs("...\n", stdout);
  return kExitOk;
}

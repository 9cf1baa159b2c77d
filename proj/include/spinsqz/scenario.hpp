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

// Config-driven scenario runner behind the command-line tool.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spinsqz/cavity.hpp"
#include "spinsqz/config.hpp"
#include "spinsqz/dicke.hpp"
#include "spinsqz/model.hpp"

namespace spinsqz {

std::string_view version_string();

inline constexpr const char* kMetadataFile = "metadata.cfg";

struct ScenarioResult {
  std::string scenario;
  std::filesystem::path output_dir;
  std::vector<std::filesystem::path> files;  // CSV outputs, then the metadata sidecar
};

// Fills every default the scenario uses so that the returned config fully
// determines the run. Throws ConfigError on missing or inconsistent keys.
Config resolve_config(const Config& config);

// Resolves and checks the config, including model construction and step size,
// without running anything.
void validate_config(const Config& config);

// Runs the scenario and writes its CSV files plus metadata.cfg into the output
// directory (override, else output_dir, else "."). Errors from the numerical
// modules propagate with the scenario name prefixed.
ScenarioResult run_scenario(const Config& config,
                            const std::optional<std::filesystem::path>& output_dir = {});

// Lab inputs from the config; all of Lambda, gamma, kappa, Delta_a, Delta_c,
// eta0, omega_r, N and either kgtau or (tau, k, g) are required.
LabInputs lab_inputs_from(const Config& config);

// Text table of derived rates and the approximation ledger.
std::string ledger_report(const Config& config);

// Resolved metadata text: version and RNG comments, then key = value lines.
std::string metadata_text(const Config& resolved);

}  // namespace spinsqz

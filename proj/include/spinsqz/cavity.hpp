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

// Effective spin-model rates of an atom-cavity setup from lab-level inputs.

#pragma once

#include <array>
#include <optional>
#include <string>

#include "spinsqz/types.hpp"

namespace spinsqz {

struct LabInputs {
  double Lambda = 0.0;   // single-atom vacuum coupling [rad/s]
  double gamma = 0.0;    // atomic decay [rad/s]
  double kappa = 0.0;    // cavity decay [rad/s]
  double Delta_a = 0.0;  // atom-pump detuning [rad/s]
  double Delta_c = 0.0;  // cavity-pump detuning [rad/s]
  double eta0 = 0.0;     // pump amplitude [rad/s]
  double tau = 0.0;      // drop time [s]
  double omega_r = 0.0;  // recoil frequency [rad/s]
  double k = 0.0;        // wavenumber [1/m]
  double g = 0.0;        // gravity [m/s^2]
  int N = 0;
  std::optional<double> kgtau;  // overrides k * g * tau when set [rad/s]

  double kgtau_value() const { return kgtau ? *kgtau : k * g * tau; }
  void validate() const;  // throws InvalidArgument
};

struct LedgerEntry {
  std::string name;
  double ratio = 0.0;
  bool pass = false;      // ratio >= kLedgerPassThreshold
  bool marginal = false;  // pass, but below 10
};

inline constexpr double kLedgerPassThreshold = 5.0;
inline constexpr double kLedgerComfortable = 10.0;

struct CavityParams {
  double U0 = 0.0;
  double Delta_c_prime = 0.0;
  Complex beta0_complex{};  // -eta0 / (Delta_c' - i kappa / 2)
  double beta0 = 0.0;       // |beta0|
  double chi0 = 0.0;
  double Gamma0 = 0.0;
  double omega_g = 0.0;
  double epsilon = 0.0;  // U0 / Delta_c'
};

// Throws InvalidArgument on bad inputs and NumericalError when Delta_c' = 0.
CavityParams derive(const LabInputs& inputs);

// Six validity ratios, in a fixed order:
// excited_state_elimination, cavity_elimination_1, cavity_elimination_2,
// perturbation, single_momentum_flips, pair_creation.
std::array<LedgerEntry, 6> approximation_ledger(const CavityParams& params,
                                                const LabInputs& inputs);

// Human-readable table of the ledger.
std::string format_ledger(const std::array<LedgerEntry, 6>& ledger);

}  // namespace spinsqz

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

#include "spinsqz/cavity.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace spinsqz {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be finite");
}

void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (!(v > 0.0)) throw InvalidArgument(std::string(name) + " must be > 0");
}

LedgerEntry entry(const char* name, double ratio) {
  LedgerEntry e;
  e.name = name;
  e.ratio = ratio;
  e.pass = ratio >= kLedgerPassThreshold;
  e.marginal = e.pass && ratio < kLedgerComfortable;
  return e;
}

}  // namespace

void LabInputs::validate() const {
  require_positive(Lambda, "Lambda");
  require_finite(gamma, "gamma");
  if (gamma < 0.0) throw InvalidArgument("gamma must be >= 0");
  require_positive(kappa, "kappa");
  require_finite(Delta_a, "Delta_a");
  require_finite(Delta_c, "Delta_c");
  require_positive(eta0, "eta0");
  require_positive(omega_r, "omega_r");
  if (kgtau) {
    require_finite(*kgtau, "kgtau");
  } else {
    require_positive(tau, "tau");
    require_positive(k, "k");
    require_positive(g, "g");
  }
  if (N < 1) throw InvalidArgument("N must be >= 1");
  if (!(Delta_a * Delta_a + 0.25 * gamma * gamma > 0.0)) {
    throw InvalidArgument("Delta_a and gamma cannot both vanish");
  }
}

CavityParams derive(const LabInputs& in) {
  in.validate();
  CavityParams p;
  p.U0 = 0.5 * in.Lambda * in.Lambda * in.Delta_a /
         (in.Delta_a * in.Delta_a + 0.25 * in.gamma * in.gamma);
  p.Delta_c_prime = in.Delta_c - static_cast<double>(in.N) * p.U0;
  if (p.Delta_c_prime == 0.0) throw NumericalError("dressed cavity detuning is zero");
  const double dc = p.Delta_c_prime;
  const double lorentz = dc * dc + 0.25 * in.kappa * in.kappa;
  p.beta0_complex = -in.eta0 / Complex(dc, -0.5 * in.kappa);
  p.beta0 = std::abs(p.beta0_complex);
  const double b2 = p.beta0 * p.beta0;
  p.chi0 = p.U0 * p.U0 * b2 * dc / lorentz;
  p.Gamma0 = in.kappa * p.U0 * p.U0 * b2 / lorentz;
  p.omega_g = 4.0 * in.omega_r - 2.0 * in.kgtau_value();
  p.epsilon = p.U0 / dc;
  return p;
}

std::array<LedgerEntry, 6> approximation_ledger(const CavityParams& p, const LabInputs& in) {
  const double n = static_cast<double>(in.N);
  const double stark = std::abs(p.U0) * p.beta0 * p.beta0;
  const double nchi = n * std::abs(p.chi0);
  return {
      entry("excited_state_elimination", std::abs(in.Delta_a) / (std::sqrt(n) * in.Lambda)),
      entry("cavity_elimination_1", std::abs(p.Delta_c_prime) / nchi),
      entry("cavity_elimination_2", std::abs(p.Delta_c_prime) / stark),
      entry("perturbation", 2.0 / (n * std::abs(p.epsilon))),
      entry("single_momentum_flips", 12.0 * std::abs(in.kgtau_value()) / stark),
      entry("pair_creation", 16.0 * in.omega_r / nchi),
  };
}

std::string format_ledger(const std::array<LedgerEntry, 6>& ledger) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-28s %14s  %s\n", "approximation", "ratio", "status");
  out << line;
  for (const LedgerEntry& e : ledger) {
    const char* status = !e.pass ? "FAIL" : (e.marginal ? "marginal" : "ok");
    std::snprintf(line, sizeof line, "%-28s %14.6g  %s\n", e.name.c_str(), e.ratio, status);
    out << line;
  }
  return out.str();
}

}  // namespace spinsqz

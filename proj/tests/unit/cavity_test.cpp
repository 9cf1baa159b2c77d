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

#include <gtest/gtest.h>

#include <cmath>

#include "lab_fixture.hpp"
#include "spinsqz/cavity.hpp"

namespace spinsqz {
namespace {

constexpr double kHz = kTwoPi * 1e3;
constexpr double kMHz = kTwoPi * 1e6;

TEST(Derive, ReferenceRates) {
  const CavityParams p = derive(fixture::reference_lab());
  EXPECT_NEAR(std::abs(p.U0) / (2.5 * kHz), 1.0, 0.01);
  EXPECT_NEAR(std::abs(p.Delta_c_prime) / (4.85 * kMHz), 1.0, 0.01);
  EXPECT_NEAR(p.beta0 / 6.8, 1.0, 0.01);
  EXPECT_NEAR(std::abs(p.chi0) / (59.2 * kTwoPi), 1.0, 0.02);
  EXPECT_NEAR(100 * std::abs(p.chi0) / (5.92 * kHz), 1.0, 0.02);
  EXPECT_NEAR(p.omega_g / (-0.488 * kMHz), 1.0, 0.01);
  EXPECT_NEAR(std::abs(p.epsilon) / 5.1e-4, 1.0, 0.02);
  EXPECT_NEAR(std::abs(p.U0) * p.beta0 * p.beta0 / (0.115 * kMHz), 1.0, 0.02);
}

TEST(Derive, Identities) {
  LabInputs in = fixture::reference_lab();
  for (double kappa : {1e3, 3.5e5, 2e7}) {
    in.kappa = kappa;
    const CavityParams p = derive(in);
    EXPECT_NEAR((p.Gamma0 / p.chi0) / (kappa / p.Delta_c_prime), 1.0, 1e-12);
    EXPECT_NEAR(p.epsilon * p.Delta_c_prime / p.U0, 1.0, 1e-15);
    EXPECT_NEAR(p.Delta_c_prime, in.Delta_c - in.N * p.U0, 1e-6);
    // beta0 is the steady state of the driven damped cavity field.
    const Complex i(0, 1);
    const Complex rate = -i * (p.Delta_c_prime - 0.5 * i * kappa) * p.beta0_complex - i * in.eta0;
    EXPECT_LT(std::abs(rate), 1e-9 * in.eta0);
    EXPECT_GT(p.Gamma0, 0.0);
  }
}

TEST(Derive, KgTauOverride) {
  LabInputs in = fixture::reference_lab();
  in.kgtau = kTwoPi * 0.25e6;
  const CavityParams p = derive(in);
  EXPECT_NEAR(p.omega_g, 4.0 * in.omega_r - 2.0 * kTwoPi * 0.25e6, 1e-6);
  in.tau = 0.0;  // unused when the override is present
  EXPECT_NO_THROW(derive(in));
}

TEST(Derive, RejectsInvalidInputs) {
  LabInputs in = fixture::reference_lab();
  in.kappa = -1.0;
  EXPECT_THROW(derive(in), InvalidArgument);
  in = fixture::reference_lab();
  in.N = 0;
  EXPECT_THROW(derive(in), InvalidArgument);
  in = fixture::reference_lab();
  in.Delta_a = 0.0;
  in.gamma = 0.0;
  EXPECT_THROW(derive(in), InvalidArgument);
  in = fixture::reference_lab();
  in.Delta_c = in.N * derive(in).U0;
  EXPECT_THROW(derive(in), NumericalError);
}

TEST(Ledger, ReferenceRatios) {
  const LabInputs in = fixture::reference_lab();
  const auto ledger = approximation_ledger(derive(in), in);
  const double expected[6] = {10, 820, 42, 39, 26, 10};
  const char* names[6] = {"excited_state_elimination", "cavity_elimination_1",
                          "cavity_elimination_2",      "perturbation",
                          "single_momentum_flips",     "pair_creation"};
  for (int k = 0; k < 6; ++k) {
    EXPECT_EQ(ledger[k].name, names[k]);
    EXPECT_NEAR(ledger[k].ratio / expected[k], 1.0, 0.05) << names[k];
    EXPECT_TRUE(ledger[k].pass);
  }
}

TEST(Ledger, Scalings) {
  LabInputs in = fixture::reference_lab();
  const double base = approximation_ledger(derive(in), in)[0].ratio;
  in.Lambda /= 10.0;
  const double scaled = approximation_ledger(derive(in), in)[0].ratio;
  EXPECT_NEAR(scaled / base, 10.0, 1e-12);
  EXPECT_NEAR(scaled, 100.0, 5.0);

  // A single atom: 2 / |epsilon| with |epsilon| ~ 5.1e-4.
  in = fixture::reference_lab();
  in.N = 1;
  const CavityParams p = derive(in);
  const double pert = approximation_ledger(p, in)[3].ratio;
  EXPECT_NEAR(pert, 2.0 / std::abs(p.epsilon), 1e-9);
  EXPECT_NEAR(pert / 3.9e3, 1.0, 0.05);
}

TEST(Ledger, StatusFlags) {
  LabInputs in = fixture::reference_lab();
  in.Lambda *= 3.0;  // excited-state ratio drops to ~3.3
  const auto ledger = approximation_ledger(derive(in), in);
  EXPECT_FALSE(ledger[0].pass);
  const std::string text = format_ledger(ledger);
  EXPECT_NE(text.find("excited_state_elimination"), std::string::npos);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace spinsqz

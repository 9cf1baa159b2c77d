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

// Reference lab inputs for the vertical-cavity realization (N = 100, 87Rb D2).

#pragma once

#include "spinsqz/cavity.hpp"

namespace spinsqz::fixture {

inline LabInputs reference_lab() {
  LabInputs in;
  in.Lambda = kTwoPi * 0.5e6;
  in.gamma = kTwoPi * 6.066e6;
  in.kappa = kTwoPi * 56e3;
  in.Delta_a = kTwoPi * 50e6;
  in.Delta_c = kTwoPi * 5.1e6;
  in.eta0 = kTwoPi * 33e6;
  in.tau = 20e-3;
  in.omega_r = kTwoPi * 3.77e3;
  in.k = kTwoPi / 780e-9;
  in.g = 9.81;
  in.N = 100;
  return in;
}

}  // namespace spinsqz::fixture

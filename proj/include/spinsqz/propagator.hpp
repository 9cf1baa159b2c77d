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

// Fixed-step RK4 integration of
//   d rho / dt = -i [H(t), rho] + D[L(t)] rho,
//   D[L] rho   = L rho L^dag - (L^dag L rho + rho L^dag L) / 2,
// or of the Schrodinger equation when the model is closed and the state pure.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "spinsqz/dicke.hpp"
#include "spinsqz/model.hpp"

namespace spinsqz {

struct StepControl {
  double dt = 0.0;        // requested step; may be shortened to align |cos| kinks
  int record_every = 1;   // keep every k-th step (the initial and final states always)
  bool renormalize = true;
  bool check_positivity = true;  // eigenvalue check of recorded mixed states
};

// dt = (2 pi / omega_fast) / 100
// min((2 pi / omega_fast) / 100, rk4_step_limit(spec))
StepControl default_step_control(const ModelSpec& spec);

// Largest step inside the RK4 stability region, from a bound on the spectral
// radius of the Liouvillian built from infinity norms of the model terms.
double rk4_step_limit(const ModelSpec& spec);

// Throws StepSizeError when dt > (2 pi / omega_fast) / 40 or dt exceeds
// rk4_step_limit, and InvalidArgument on a nonpositive dt or record stride.
void check_step_control(const StepControl& ctl, const ModelSpec& spec);

// Step actually used: the requested dt, shortened when the jump amplitude has
// |cos| kinks so that an even number of steps fits in each half drive period.
double effective_step(const StepControl& ctl, const ModelSpec& spec);

struct Trajectory {
  std::vector<double> times;
  std::vector<DickeState> states;
  ModelSpec model;
};

// -i[H, rho] + D[L] rho for a general (dense) H and optional L.
CMatrix lindblad_rhs(const DickeState& state, const CollectiveOperator& hamiltonian,
                     const std::optional<CollectiveOperator>& jump);

using StateObserver = std::function<void(double t, const DickeState& state)>;

// Streams recorded states to the observer instead of storing them.
void evolve_observed(const DickeState& initial, const ModelSpec& spec, double t0, double t1,
                     const StepControl& ctl, const StateObserver& observer);

Trajectory evolve(const DickeState& initial, const ModelSpec& spec, double t0, double t1,
                  const StepControl& ctl);

// rho~ = U^dag rho U with U = exp(-i delta t Jz).
DickeState to_rotating_frame(const DickeState& state, double delta, double t);

}  // namespace spinsqz

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

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/SparseCore>

#include "spinsqz/dicke.hpp"

namespace spinsqz {

// Hamiltonian families (hbar = 1, angular frequencies):
//   dicke     H = delta Jz + chi cos(omega t) Jx^2
//   pdd       same as dicke with omega = 2 delta
//   oat       H = -(chi / 2) Jz^2
//   tact_rwa  H = (chi / 8) (J+^2 + J-^2)
//   vc        H = omega_g Jz - chi0 cos(omega t) Jx^2   (delta holds omega_g)
// Every family with gamma0 > 0 has the jump sqrt(gamma0 |cos(omega t)|) Jx.
enum class ModelFamily { Dicke, Pdd, Oat, TactRwa, Vc };

ModelFamily parse_model_family(std::string_view name);
std::string_view model_family_name(ModelFamily family);

class ModelSpec {
 public:
  // Validates: N >= 1, gamma0 >= 0, pdd requires omega == 2 delta,
  // oat and tact_rwa require omega == 0.
  ModelSpec(ModelFamily family, int n_atoms, double delta, double chi, double omega, double gamma0);

  // omega fixed at the parametric resonance 2 delta.
  static ModelSpec pdd(int n_atoms, double delta, double chi, double gamma0 = 0.0);

  ModelFamily family() const { return family_; }
  int n_atoms() const { return n_atoms_; }
  double delta() const { return delta_; }
  double chi() const { return chi_; }
  double omega() const { return omega_; }
  double gamma0() const { return gamma0_; }

  // max(|delta|, |omega|, N |chi|)
  double fastest_frequency() const;

 private:
  ModelFamily family_;
  int n_atoms_;
  double delta_;
  double chi_;
  double omega_;
  double gamma0_;
};

CollectiveOperator hamiltonian_at(const ModelSpec& spec, double t);

// Empty when gamma0 = 0.
std::optional<CollectiveOperator> jump_at(const ModelSpec& spec, double t);

// Sparse building blocks of H(t) and L(t) for time stepping:
//   H(t) = sum_k coefficient_k(t) * term_k,   L(t) = jump_coefficient(t) * Jx.
class ModelOperators {
 public:
  using Sparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

  explicit ModelOperators(const ModelSpec& spec);

  const ModelSpec& spec() const { return spec_; }
  std::size_t term_count() const { return terms_.size(); }
  const Sparse& term(std::size_t k) const { return terms_[k]; }
  double coefficient(std::size_t k, double t) const;
  double coefficient_bound(std::size_t k) const;  // max over t of |coefficient(k, t)|

  bool has_jump() const { return spec_.gamma0() > 0.0; }
  const Sparse& jump_operator() const { return jx_; }  // Hermitian Jx
  double jump_coefficient(double t) const;

 private:
  ModelSpec spec_;
  std::vector<Sparse> terms_;
  Sparse jx_;
};

struct DriveSample {
  Complex beta;
  double delta_c_prime = 0.0;
  Complex eta;
  bool eta_divergent = false;  // tan(omega t) diverges; eta reported as +inf
};

// Injected field beta0 sqrt(cos wt) (principal root), switched detuning
// Delta_c'(0) sgn(cos wt), and the pump eta(t) that produces them.
DriveSample drive_profile(Complex beta0, double omega, double delta_c_prime0, double kappa,
                          double t);

// [ln(N^2) + 4] / (N |chi|)
double t_peak_estimate(int n_atoms, double chi);

// 4 / (sqrt(N) |chi|)
double oat_plateau_time(int n_atoms, double chi);

}  // namespace spinsqz

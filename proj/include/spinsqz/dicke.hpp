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

// Collective spin algebra on the permutation-symmetric subspace
// |j = N/2, m>, m = -j ... +j. Index 0 of every vector and matrix is m = -j.

#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "spinsqz/types.hpp"

namespace spinsqz {

// Tolerances used when a DickeState is constructed or checked.
struct StateTolerance {
  double norm = 1e-9;
  double hermiticity = 1e-9;
  double trace = 1e-9;
  double min_eigenvalue = -1e-8;
};

struct InvariantReport {
  double norm_error = 0.0;         // |<psi|psi> - 1| or |tr rho - 1|
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double min_eigenvalue = 0.0;     // smallest eigenvalue of rho (1 for pure)
  bool ok(const StateTolerance& tol) const {
    return norm_error <= tol.norm && hermiticity_error <= tol.hermiticity &&
           min_eigenvalue >= tol.min_eigenvalue;
  }
};

class DickeState {
 public:
  // Validating constructors; throw InvalidArgument when the invariants fail.
  static DickeState pure(int n_atoms, CVector amplitudes, const StateTolerance& tol = {});
  static DickeState mixed(int n_atoms, CMatrix rho, const StateTolerance& tol = {});

  // Skip validation. For callers that already guarantee the invariants.
  static DickeState pure_unchecked(int n_atoms, CVector amplitudes);
  static DickeState mixed_unchecked(int n_atoms, CMatrix rho);

  int n_atoms() const { return n_atoms_; }
  Eigen::Index dim() const { return n_atoms_ + 1; }
  bool is_pure() const { return std::holds_alternative<CVector>(data_); }

  // Throws InvalidArgument if the representation does not match.
  const CVector& amplitudes() const;
  const CMatrix& density_matrix() const;

  // Density matrix in either representation.
  CMatrix to_density() const;
  DickeState as_mixed() const;

  double purity() const;
  InvariantReport check(bool with_eigenvalues = true) const;

 private:
  DickeState(int n, std::variant<CVector, CMatrix> d) : n_atoms_(n), data_(std::move(d)) {}
  int n_atoms_;
  std::variant<CVector, CMatrix> data_;
};

enum class OperatorKind { JPlus, JMinus, Jx, Jy, Jz, Jx2, Jz2, J2, Tact };

// Accepts the lowercase names jplus, jminus, jx, jy, jz, jx2, jz2, j2, tact.
OperatorKind parse_operator_kind(std::string_view name);
std::string_view operator_kind_name(OperatorKind kind);

class CollectiveOperator {
 public:
  CollectiveOperator(int n_atoms, CMatrix matrix, bool hermitian);

  int n_atoms() const { return n_atoms_; }
  const CMatrix& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }

 private:
  int n_atoms_;
  CMatrix matrix_;
  bool hermitian_;
};

CollectiveOperator build_operator(OperatorKind kind, int n_atoms);

// Spin projection a.J for a (not necessarily unit) real 3-vector.
CMatrix spin_projection(int n_atoms, const Vec3& axis);

// exp(-i * angle * A) for Hermitian A, via eigendecomposition.
CMatrix hermitian_exponential(const CMatrix& hermitian, double angle);

DickeState basis_state(int n_atoms, int m_index);  // m_index = j + m
DickeState maximally_mixed(int n_atoms);

// |theta, phi> = exp(-i phi Jz) exp(-i theta Jy) |down>^N.
DickeState coherent_state(int n_atoms, double theta, double phi);

// exp(-i angle (a.J)) applied to the state, with a normalized internally.
DickeState rotate(const DickeState& state, const Vec3& axis, double angle);

Complex expectation(const DickeState& state, const CollectiveOperator& op);

double fidelity_with_pure(const DickeState& state, const DickeState& target);

// Berry-Wiseman phase state, amplitudes sin[pi (j + m + 1) / (N + 2)] / sqrt(N/2 + 1).
DickeState bw_state(int n_atoms);

// Q(theta_i, phi_k) = <theta, phi| rho |theta, phi>; rows follow theta_grid.
Eigen::MatrixXd husimi_q(const DickeState& state, std::span<const double> theta_grid,
                         std::span<const double> phi_grid);

// Best overlap of a state with a pure target over all rotations
// R = exp(-i a Jz) exp(-i b Jy) exp(-i c Jz): max_R <target| R rho R^dagger |target>.
struct AlignedFidelity {
  double fidelity = 0.0;
  double alpha = 0.0;  // a
  double beta = 0.0;   // b
  double gamma = 0.0;  // c
};

AlignedFidelity aligned_fidelity(const DickeState& state, const DickeState& target);

// Apply R = exp(-i a Jz) exp(-i b Jy) exp(-i c Jz).
DickeState rotate_euler(const DickeState& state, double alpha, double beta, double gamma);

}  // namespace spinsqz

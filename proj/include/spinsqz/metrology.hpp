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

#include <array>

#include "spinsqz/dicke.hpp"

namespace spinsqz {

// Quantum Fisher information matrix over the generators {Jx, Jy, Jz}.
struct QfimResult {
  Mat3 matrix = Mat3::Zero();
  std::array<double, 3> eigenvalues{};  // descending: lambda_max, lambda_2, lambda_3
  Mat3 generators = Mat3::Zero();       // column k is the unit eigenvector of eigenvalues[k]
  double degeneracy_gap = 0.0;          // lambda_max - lambda_2

  double lambda_max() const { return eigenvalues[0]; }
  Vec3 optimal_generator() const { return generators.col(0); }
};

// Pairs with rho_i + rho_j <= this threshold (relative to tr rho) are skipped.
inline constexpr double kQfimRankEpsilon = 1e-12;

// Mixed-state QFIM from the spectral decomposition of rho:
//   F_mn = sum_{i,j} 2 (p_i - p_j)^2 / (p_i + p_j) Re[<i|Jm|j><j|Jn|i>].
QfimResult qfim(const DickeState& state);

// Eigen-solve and sign-fix a symmetric 3x3 Fisher matrix.
QfimResult qfim_from_matrix(const Mat3& matrix);

// 1 / sqrt(M lambda_max)
double qcrb_sigma(double lambda_max, long long measurements);

// 10 log10(sqrt(lambda_max / N))
double db_gain(double lambda_max, int n_atoms);

// |<e^{i phi}>|^{-2} - 1 with <e^{i phi}> = sum_m conj(c_{m+1}) c_m.
// Returns +infinity when |<e^{i phi}>| < 1e-12.
double holevo_variance(const DickeState& state);

}  // namespace spinsqz
